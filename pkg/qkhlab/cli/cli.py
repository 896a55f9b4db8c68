from __future__ import annotations
from typing import Any, Callable
from collections.abc import MutableMapping

from dataclasses import dataclass, fields
from argparse import ArgumentParser, Namespace
from functools import wraps
from itertools import product
import json
import logging
import sys

from qkhlab.groupring import (GroupRingException, UnsupportedHomologyError, homology_all,
                              poincare_polynomial)
from qkhlab.tangles import TangleException, TangleWord, load_tangle
from qkhlab.platform import (PlatformException, build_ck_bimodule,
                             build_ck_complex, build_platform_algebra, enumerate_matchings)
from qkhlab.qtqft import BasisIdentificationError, ExponentTableError, QTQFTException, kc, qakc
from qkhlab.hochschild import HochschildException, QCHComplex, qch_total, qhh, window_for
from qkhlab.comparison import (ComparisonException, build_xi, verify_a_trace, verify_chain_map,
                               verify_deformed_face, verify_quasi_iso)
from qkhlab.burnside import BurnsideException, burnside_cube, verify_coherence
from qkhlab.cli.cli_config import SCHEMA, ConfigException, RunConfig
from qkhlab.cli.corpus import run_corpus
from qkhlab.utils import configure_logging, spinner

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_MALFORMED = 2
EXIT_UNSUPPORTED = 3
EXIT_INTERNAL = 4

# most specific first
_EXIT_CODES: tuple[tuple[type[Exception], int], ...] = (
    (UnsupportedHomologyError, EXIT_UNSUPPORTED),
    (BasisIdentificationError, EXIT_INTERNAL),
    (ExponentTableError, EXIT_INTERNAL),
    (BurnsideException, EXIT_INTERNAL),
    (ConfigException, EXIT_MALFORMED),
    (TangleException, EXIT_MALFORMED),
    (PlatformException, EXIT_MALFORMED),
    (QTQFTException, EXIT_MALFORMED),
    (HochschildException, EXIT_MALFORMED),
    (ComparisonException, EXIT_MALFORMED),
    (GroupRingException, EXIT_MALFORMED),
)

_log = logging.getLogger("qkhlab.cli")


def emit(command: str, payload: MutableMapping[str, Any]) -> None:
    """Print the payload as deterministic JSON on stdout."""
    document = {"schema": SCHEMA, "command": command, **payload}
    print(json.dumps(document, sort_keys=True, indent=2, default=str))


def _guarded(command: str) -> Callable:
    """Build the RunConfig, run the handler and turn module errors into exit codes."""
    def decorator(func: Callable[[RunConfig], int]) -> Callable[[Namespace], int]:
        @wraps(func)
        def handler(args: Namespace) -> int:
            try:
                return func(RunConfig.from_args(command, args))
            except tuple(e for e, _ in _EXIT_CODES) as e:
                code = next(code for kind, code in _EXIT_CODES if isinstance(e, kind))
                _log.debug("%s failed with exit code %d", command, code, exc_info=True)
                print(f"{command}: {e}", file=sys.stderr)
                return code
        return handler
    return decorator


def _word(config: RunConfig) -> TangleWord:
    return load_tangle(config.path)


def _homology(complex_, config: RunConfig) -> dict[str, Any]:
    summaries = homology_all(complex_, config.q_action, config.workers)
    return {"homology": {str(i): s.to_json() for i, s in summaries.items()},
            "poincare": poincare_polynomial(summaries.values())}


class SubcommandsMixin:
    @staticmethod
    @_guarded("matchings")
    def matchings(config: RunConfig) -> int:
        found = enumerate_matchings(config.n, config.k)
        emit("matchings", {"n": config.n, "k": config.k, "count": len(found),
                           "matchings": [a.to_json() for a in found]})
        return EXIT_OK

    @staticmethod
    @_guarded("algebra")
    def algebra(config: RunConfig) -> int:
        emit("algebra", build_platform_algebra(config.n, config.k).to_json())
        return EXIT_OK

    @staticmethod
    @_guarded("bimodule")
    def bimodule(config: RunConfig) -> int:
        word = _word(config)
        module = build_ck_bimodule(word, config.k, config.vertex or None)
        emit("bimodule", {"tangle": word.to_json(), **module.to_json()})
        return EXIT_OK

    @staticmethod
    @_guarded("qakh")
    def qakh(config: RunConfig) -> int:
        word = _word(config)
        complex_ = qakc(word, config.group, annular_degree=config.annular_degree,
                        method=config.method, workers=config.workers)
        if config.specialize_q1:
            complex_ = complex_.specialize_q1()
        payload: dict[str, Any] = {"tangle": word.to_json(), "group": complex_.group.to_json(),
                                   "complex": complex_.to_json()}
        if config.homology:
            payload.update(_homology(complex_, config))
        emit("qakh", payload)
        return EXIT_OK

    @staticmethod
    @_guarded("kh")
    def kh(config: RunConfig) -> int:
        word = _word(config)
        complex_ = kc(word)
        payload: dict[str, Any] = {"tangle": word.to_json(), "complex": complex_.to_json()}
        if config.homology:
            payload.update(_homology(complex_, config))
        emit("kh", payload)
        return EXIT_OK

    @staticmethod
    @_guarded("qhh")
    def qhh(config: RunConfig) -> int:
        word = _word(config)
        if word.crossing_count:
            source = build_ck_complex(word, config.k, config.workers)
        else:
            source = build_ck_bimodule(word, config.k)
        window = config.window if config.window is not None else window_for(source, config.degree)
        summary = qhh(source, config.degree, config.group, window)
        payload: dict[str, Any] = {"tangle": word.to_json(), "k": config.k, "degree": config.degree,
                                   "window": window, "homology": summary.to_json()}
        if config.dump:
            if word.crossing_count:
                payload["complex"] = qch_total(source, window).to_json()
            else:
                payload["complex"] = QCHComplex(source, window).to_json()
        emit("qhh", payload)
        return EXIT_OK

    @staticmethod
    @_guarded("xi-verify")
    def xi_verify(config: RunConfig) -> int:
        word = _word(config)
        xi = build_xi(word, config.k, config.window, config.workers)
        certificates = [verify_chain_map(xi.chain_map)]
        if config.group.is_finite:
            certificates.append(verify_quasi_iso(xi.chain_map, config.group, xi.certified_degrees(), xi.adeg))
        if config.identities:
            for v in product((0, 1), repeat=word.crossing_count):
                certificates.append(verify_deformed_face(word, config.k, v))
                certificates.append(verify_a_trace(word, config.k, v))
        verdict = {c.name: "pass" if c.ok else "fail" for c in certificates}
        verdict.setdefault("cone_acyclic", "skipped")
        emit("xi-verify", {"tangle": word.to_json(), "group": config.group.to_json(),
                           "xi": xi.to_json(), **verdict,
                           "certificates": [c.to_json() for c in certificates]})
        return EXIT_OK if all(c.ok for c in certificates) else EXIT_FAILED

    @staticmethod
    @_guarded("burnside-verify")
    def burnside_verify(config: RunConfig) -> int:
        word = _word(config)
        cube = burnside_cube(word, method=config.method)
        report = verify_coherence(cube, config.group)
        emit("burnside-verify", {"tangle": word.to_json(), "group": config.group.to_json(),
                                 "cube": cube.to_json(), **report.to_json()})
        return EXIT_OK if report.ok else EXIT_FAILED

    @staticmethod
    @_guarded("corpus")
    def corpus(config: RunConfig) -> int:
        try:
            result = spinner("Running the acceptance corpus...")(run_corpus)(config.only, config.workers)
        except KeyError as e:
            raise ConfigException(str(e)) from e
        emit("corpus", result)
        return EXIT_OK if result["ok"] else EXIT_FAILED

    @staticmethod
    def not_implemented(args: Namespace) -> int:
        print("Function not implemented.", file=sys.stderr)
        return EXIT_INTERNAL


@dataclass
class Cli(SubcommandsMixin):
    """
    Provide interface abstraction
    """
    prog: str
    description: str
    command_matchings: MutableMapping[str, Any]
    command_algebra: MutableMapping[str, Any]
    command_bimodule: MutableMapping[str, Any]
    command_qakh: MutableMapping[str, Any]
    command_kh: MutableMapping[str, Any]
    command_qhh: MutableMapping[str, Any]
    command_xi_verify: MutableMapping[str, Any]
    command_burnside_verify: MutableMapping[str, Any]
    command_corpus: MutableMapping[str, Any]
    flag_workers: MutableMapping[str, Any]
    flag_verbose: MutableMapping[str, Any]

    def __post_init__(self) -> None:
        self.global_parser = ArgumentParser(prog=self.prog,
                                            description=self.description)
        commands, flags = self._get_commands()

        if flags:
            for flag in flags:
                flag_config = getattr(self, "flag_"+flag)
                self.global_parser.add_argument("--"+flag,
                                                **flag_config)

        if commands:
            self.subparsers = self.global_parser.add_subparsers()
            for command in commands:
                self._create_subparsers(command)

    def _get_commands(self) -> tuple[list[str], list[str]]:
        """
        Get subcommands and flags from the dataclass fields.

        If the field starts with `command_` it means it's
        a subcommand. If it starts with `flag_`, it is a flag.
        """
        commands: list[str] = []
        flags: list[str] = []
        for comm in fields(self):
            if comm.name.startswith("command_"):
                commands.append(comm.name.removeprefix("command_"))
            elif comm.name.startswith("flag_"):
                flags.append(comm.name.removeprefix("flag_"))

        return commands, flags

    def _create_subparsers(self, command: str) -> None:
        """
        Create a subparser given the command. Underscores in the field
        name become dashes on the command line.

        :param command: command to create a subparser for.
        """
        command_config = getattr(self, "command_"+command)
        parser = self.subparsers.add_parser(command.replace("_", "-"),
                                            help=command_config.get("help", ""))

        subflags = command_config.get('flags', {})
        for flag in subflags:
            parser.add_argument(flag, **subflags[flag])

        default_func = getattr(self, command, self.not_implemented)
        parser.set_defaults(func=default_func)

    def parse(self, *args: Any, **kwargs: Any) -> Namespace:
        cli_args: Namespace = self.global_parser.parse_args(*args, **kwargs)

        return cli_args

    def __call__(self, *args: Any, **kwargs: Any) -> int:
        """Run once and return the exit code."""
        cli_args = self.parse(*args, **kwargs)
        configure_logging(cli_args.verbose)
        if hasattr(cli_args, 'func'):
            return cli_args.func(cli_args)
        self.global_parser.print_help(sys.stderr)
        return EXIT_MALFORMED

    def run(self, *args: Any, **kwargs: Any) -> None:
        sys.exit(self(*args, **kwargs))
