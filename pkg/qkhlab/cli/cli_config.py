from __future__ import annotations
from pathlib import Path
from collections.abc import MutableMapping
from typing import Any, Optional

from dataclasses import dataclass
from argparse import Namespace

from qkhlab.groupring import CyclicGroup, GroupRingException
from qkhlab.utils import worker_width

SCHEMA = "qkh-lab/1"

_TANGLE = {
    "help": "JSON tangle file.",
    "type": Path,
    "required": True
}
_LINK = {
    "help": "JSON file of an (n,n) word whose annular closure is the link.",
    "type": Path,
    "required": True
}
_K = {
    "help": "Left platform weight k.",
    "type": int,
    "required": True
}
_GROUP = {
    "help": "Order r of the cyclic group G, or Z for the infinite one.",
    "type": str,
    "default": "Z"
}
_FINITE_GROUP = {**_GROUP, "default": "3"}
_WINDOW = {
    "help": "Highest Hochschild degree kept in the truncated complex.",
    "type": int,
    "default": None
}
_METHOD = {
    "help": "Edge maps from the exponent table or from qHH_0 on every edge.",
    "type": str,
    "default": "fast",
    "choices": ["fast", "oracle"]
}
_VERTEX = {
    "help": "Resolution of the crossings, e.g. 01.",
    "type": str,
    "default": ""
}


_COMMANDS: MutableMapping[str, Any] = {
    "command_matchings": {
        "help": "List the platform matchings B^{n,k}.",
        "flags": {
            "--n": {"help": "Number of points on each side.", "type": int, "required": True},
            "--k": _K
        }
    },
    "command_algebra": {
        "help": "Dump the platform algebra Plat^{n,k}.",
        "flags": {
            "--n": {"help": "Number of points on each side.", "type": int, "required": True},
            "--k": _K
        }
    },
    "command_bimodule": {
        "help": "Dump the Chen-Khovanov bimodule of a planar tangle or of one resolution.",
        "flags": {
            "--tangle": _TANGLE,
            "--k": _K,
            "--vertex": _VERTEX
        }
    },
    "command_qakh": {
        "help": "Quantum annular Khovanov complex (and homology) of an annular closure.",
        "flags": {
            "--link": _LINK,
            "--group": _GROUP,
            "--annular-degree": {
                "help": "Keep only this annular degree.",
                "type": int,
                "default": None
            },
            "--homology": {
                "help": "Compute homology in every degree (finite G only).",
                "action": "store_true"
            },
            "--q-action": {
                "help": "Report the action of q on free homology generators.",
                "action": "store_true"
            },
            "--specialize-q1": {
                "help": "Set q = 1 before anything else.",
                "action": "store_true"
            },
            "--method": _METHOD
        }
    },
    "command_kh": {
        "help": "Khovanov complex of the closure drawn in the plane.",
        "flags": {
            "--link": _LINK,
            "--homology": {
                "help": "Compute homology in every degree.",
                "action": "store_true"
            }
        }
    },
    "command_qhh": {
        "help": "Quantum Hochschild homology of the Chen-Khovanov bimodule (or complex) of a tangle.",
        "flags": {
            "--tangle": _TANGLE,
            "--k": _K,
            "--degree": {
                "help": "Homological degree i.",
                "type": int,
                "default": 0
            },
            "--group": _FINITE_GROUP,
            "--window": _WINDOW,
            "--dump": {
                "help": "Include the truncated complex.",
                "action": "store_true"
            }
        }
    },
    "command_xi_verify": {
        "help": "Build the comparison map and certify it.",
        "flags": {
            "--tangle": _TANGLE,
            "--k": _K,
            "--group": _FINITE_GROUP,
            "--window": {**_WINDOW, "default": 2},
            "--identities": {
                "help": "Also check the deformed face and trace identities on every resolution.",
                "action": "store_true"
            }
        }
    },
    "command_burnside_verify": {
        "help": "Build the quantum Burnside cube and check its coherence.",
        "flags": {
            "--link": _LINK,
            "--group": _GROUP,
            "--method": _METHOD
        }
    },
    "command_corpus": {
        "help": "Run every acceptance check over the built-in corpus.",
        "flags": {
            "--only": {
                "help": "Run only these checks.",
                "nargs": "+",
                "type": str,
                "default": None
            }
        }
    },
    "flag_workers": {
        "default": None,
        "type": int,
        "help": "Process-pool width (overrides $QKH_LAB_WORKERS)."
    },
    "flag_verbose": {
        "action": "store_true",
        "help": "Log progress to stderr."
    }
}


@dataclass(frozen=True)
class RunConfig:
    """
    Validated parameters of one invocation.

    :param path: the tangle or link file, for commands that read one.
    :param group: G, parsed from "Z" or a positive order.
    """
    command: str
    path: Optional[Path] = None
    n: Optional[int] = None
    k: Optional[int] = None
    group: CyclicGroup = CyclicGroup.infinite()
    annular_degree: Optional[int] = None
    degree: int = 0
    window: Optional[int] = None
    homology: bool = False
    q_action: bool = False
    specialize_q1: bool = False
    method: str = "fast"
    vertex: tuple[int, ...] = ()
    dump: bool = False
    identities: bool = False
    only: Optional[tuple[str, ...]] = None
    workers: int = 1

    def __post_init__(self) -> None:
        if self.n is not None and self.n < 0:
            raise ConfigException(f"--n must be nonnegative, got {self.n}")
        if self.k is not None and self.k < 0:
            raise ConfigException(f"--k must be nonnegative, got {self.k}")
        if self.window is not None and self.window < 0:
            raise ConfigException(f"--window must be nonnegative, got {self.window}")
        if self.workers < 1:
            raise ConfigException(f"worker width must be positive, got {self.workers}")
        if self.path is not None and not self.path.is_file():
            raise ConfigException(f"no such file: {self.path}")

    @classmethod
    def from_args(cls, command: str, args: Namespace) -> RunConfig:
        """
        :raises ConfigException: on a malformed value.
        """
        get = vars(args).get
        try:
            group = CyclicGroup.from_json(get("group") or "Z")
            workers = worker_width(get("workers"))
            vertex = tuple(int(bit) for bit in get("vertex") or "")
        except (GroupRingException, ValueError) as e:
            raise ConfigException(str(e)) from e
        if any(bit not in (0, 1) for bit in vertex):
            raise ConfigException(f"--vertex takes a string of 0s and 1s, got {get('vertex')!r}")
        path = get("tangle") or get("link")
        only = get("only")
        return cls(command,
                   path=path,
                   n=get("n"),
                   k=get("k"),
                   group=group,
                   annular_degree=get("annular_degree"),
                   degree=get("degree") or 0,
                   window=get("window"),
                   homology=bool(get("homology")),
                   q_action=bool(get("q_action")),
                   specialize_q1=bool(get("specialize_q1")),
                   method=get("method") or "fast",
                   vertex=vertex,
                   dump=bool(get("dump")),
                   identities=bool(get("identities")),
                   only=tuple(only) if only else None,
                   workers=workers)


class ConfigException(Exception):
    """Errors related to command-line parameters"""
