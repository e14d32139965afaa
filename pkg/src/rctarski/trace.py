"""Optional recording of operator applications.

When a recorder is active, every traced operator appends a ``Step`` holding
its arguments, result and the steps it made internally.
"""

from __future__ import annotations

import contextvars
import functools
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

_current: contextvars.ContextVar = contextvars.ContextVar("rctarski_trace", default=None)


@dataclass
class Step:
    op: str
    args: tuple
    result: Any
    children: list = field(default_factory=list)


@contextmanager
def recording():
    steps: list[Step] = []
    token = _current.set(steps)
    try:
        yield steps
    finally:
        _current.reset(token)


def traced(name: str):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args):
            parent = _current.get()
            if parent is None:
                return fn(*args)
            children: list[Step] = []
            token = _current.set(children)
            try:
                result = fn(*args)
            finally:
                _current.reset(token)
            parent.append(Step(name, args, result, children))
            return result

        wrapper.op_name = name
        return wrapper

    return deco
