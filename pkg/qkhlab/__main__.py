from qkhlab.cli.cli import Cli
from qkhlab.cli.cli_config import _COMMANDS


def run() -> None:
    cli = Cli(prog="qkh-lab",
              description="Quantum annular Khovanov and Hochschild homology over Z[G]",
              **_COMMANDS)
    cli.run()


if __name__ == "__main__":
    run()
