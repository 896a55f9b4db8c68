from qkhlab.cli.cli import Cli, emit
from qkhlab.cli.cli_config import RunConfig, ConfigException
