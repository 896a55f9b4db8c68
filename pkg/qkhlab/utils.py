import os
import sys
import logging
from threading import Thread
from collections.abc import Callable
import time
from functools import wraps

from typing import Optional

_WAIT_TIME = 0.08

WORKERS_ENV = "QKH_LAB_WORKERS"


class PropagatingThread(Thread):
    """
    Thread subclass that re-raises the target's exception on join.
    """

    def run(self):
        self.exc = None
        try:
            self.ret = self._target(*self._args, **self._kwargs)
        except BaseException as e:
            self.exc = e

    def join(self, timeout: Optional[float] = None):
        super().join(timeout)
        if self.exc:
            raise self.exc

        return self.ret


def spinner(msg: str = "") -> Callable:
    """
    Show a spinner on stderr while the decorated function runs. Nothing is
    drawn when stderr is not a terminal, so piped runs stay clean.
    """
    def spinner_with_message(func: Callable):
        spinner_elements = "⣾⣽⣻⢿⡿⣟⣯⣷"

        @wraps(func)
        def threaded(*args, **kwargs):
            if not sys.stderr.isatty():
                return func(*args, **kwargs)
            thread = PropagatingThread(target=func, args=args, kwargs=kwargs)
            spinner_string = ""
            try:
                thread.start()
                # hide the terminal cursor
                sys.stderr.write("\033[?25l")
                sys.stderr.flush()

                while thread.is_alive():
                    for spin in spinner_elements:
                        spinner_string = f" {spin} {msg}"
                        print(spinner_string, end="\r", flush=True, file=sys.stderr)
                        time.sleep(_WAIT_TIME)

                return thread.join()
            finally:
                print(" "*len(spinner_string), end="\r", flush=True, file=sys.stderr)
                sys.stderr.write("\033[?25h")
                sys.stderr.flush()

        return threaded
    return spinner_with_message


def configure_logging(verbose: bool = False) -> None:
    """Log to stderr; stdout is reserved for the JSON payload."""
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    root = logging.getLogger("qkhlab")
    root.handlers[:] = [handler]
    root.setLevel(logging.DEBUG if verbose else logging.WARNING)


def worker_width(flag: Optional[int] = None) -> int:
    """
    Process-pool width: the --workers flag, else $QKH_LAB_WORKERS, else 1.

    :raises ValueError: if the environment value is not an integer.
    """
    if flag is not None:
        return flag
    value = os.environ.get(WORKERS_ENV)
    if value is None or not value.strip():
        return 1
    return int(value)
