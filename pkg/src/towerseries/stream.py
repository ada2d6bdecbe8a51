"""Memoized lazy cells and infinite cons-streams.

Everything else in the package is built from two pieces:

* ``LazyCell`` - a write-once suspension.  Forcing runs the thunk at most once;
  forcing a cell whose thunk is currently running raises
  ``NonProductiveDefinition`` instead of looping (black-hole detection).
* ``Stream`` - a cons node holding a lazy head and a lazy tail.  There is no
  empty stream.

Self-referential ("corecursive") definitions are written with ``fix`` or, for
mutually recursive pairs, with ``delay`` and ordinary Python closures::

    ones = fix(lambda s: cons(lambda: 1, lambda: s))

Forcing a long prefix is iterative (``take`` walks the spine in a loop), but
the value of a single element may legitimately depend on a chain of nested
suspensions whose length grows with the element index (series composition,
reversion, chain-rule iteration).  ``run_deep`` executes a callable on a worker
thread with a 1 GiB stack and a raised recursion limit; ``take``, ``drop`` and
indexing go through it automatically, which supports nesting depths well
beyond 10**4 elements.
"""

from __future__ import annotations

import sys
import threading
from typing import Any, Callable, Iterator, List, Sequence

from .errors import NonProductiveDefinition

__all__ = [
    "LazyCell",
    "Stream",
    "Prefix",
    "cons",
    "delay",
    "fix",
    "repeat",
    "iterate",
    "from_list",
    "map_stream",
    "zip_with",
    "take",
    "drop",
    "run_deep",
    "NonProductiveDefinition",
]

_UNEVALUATED = 0
_IN_PROGRESS = 1
_VALUE = 2


class LazyCell:
    """Write-once memoized suspension."""

    __slots__ = ("_state", "_thunk", "_value")

    def __init__(self, thunk: Callable[[], Any]):
        self._state = _UNEVALUATED
        self._thunk = thunk
        self._value = None

    @classmethod
    def of(cls, value: Any) -> "LazyCell":
        cell = cls.__new__(cls)
        cell._state = _VALUE
        cell._thunk = None
        cell._value = value
        return cell

    @property
    def evaluated(self) -> bool:
        return self._state == _VALUE

    def force(self) -> Any:
        state = self._state
        if state == _VALUE:
            return self._value
        if state == _IN_PROGRESS:
            raise NonProductiveDefinition(
                "lazy value demanded while it is being computed "
                "(a self-referential definition is not productive)"
            )
        self._state = _IN_PROGRESS
        try:
            value = self._thunk()
        except BaseException:
            self._state = _UNEVALUATED
            raise
        self._value = value
        self._state = _VALUE
        self._thunk = None
        return value

    def __repr__(self) -> str:
        if self._state == _VALUE:
            return f"LazyCell({self._value!r})"
        return "LazyCell(<in progress>)" if self._state == _IN_PROGRESS else "LazyCell(<unevaluated>)"


class Stream:
    """Infinite cons stream with a lazy head and a lazy tail."""

    __slots__ = ("_head", "_tail")

    def __init__(self, head: LazyCell, tail: LazyCell):
        self._head = head
        self._tail = tail

    @classmethod
    def cons(cls, head: Callable[[], Any], tail: Callable[[], "Stream"]):
        return cls(LazyCell(head), LazyCell(tail))

    @property
    def head(self):
        return self._head.force()

    @property
    def tail(self):
        return self._tail.force()

    def __iter__(self) -> Iterator[Any]:
        node = self
        while True:
            yield node.head
            node = node.tail

    def take(self, n: int) -> List[Any]:
        return take(n, self)

    def drop(self, n: int):
        return drop(n, self)

    def __getitem__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise IndexError("streams are indexed by non-negative integers")
        return run_deep(lambda: drop(k, self).head)

    def forced_prefix(self) -> List[Any]:
        """Heads that are already evaluated, without forcing anything."""
        out = []
        node = self
        while node._head.evaluated:
            out.append(node._head._value)
            if not node._tail.evaluated:
                break
            node = node._tail._value
            if node is self or len(out) > 20:
                break
        return out

    def __repr__(self) -> str:
        shown = ", ".join(repr(v) for v in self.forced_prefix())
        return f"{type(self).__name__}[{shown}{', ' if shown else ''}...]"


def cons(head: Callable[[], Any], tail: Callable[[], Stream], cls=Stream) -> Stream:
    """Build a node from two suspensions; neither is run here."""
    return cls.cons(head, tail)


def delay(thunk: Callable[[], Stream], cls=Stream) -> Stream:
    """A stream whose structure is produced by ``thunk`` on first access.

    The returned node forwards its head and tail to ``thunk()``.  Because the
    thunk sits in a ``LazyCell``, a definition that needs its own head in order
    to exist is reported as ``NonProductiveDefinition``.
    """
    target = LazyCell(thunk)
    return cls(LazyCell(lambda: target.force().head), LazyCell(lambda: target.force().tail))


def fix(builder: Callable[[Stream], Stream], cls=Stream) -> Stream:
    """The stream ``s`` with ``s = builder(s)``.

    ``builder`` must be productive: element k of its result may only use
    elements < k of its argument.
    """
    s = None

    def build():
        return builder(s)

    s = delay(build, cls)
    return s


def repeat(value: Any, cls=Stream) -> Stream:
    node = cls(LazyCell.of(value), None)
    node._tail = LazyCell.of(node)
    return node


def iterate(f: Callable[[Any], Any], x: Any, cls=Stream) -> Stream:
    return cls.cons(lambda: x, lambda: iterate(f, f(x), cls))


def from_list(items: Sequence[Any], rest: Stream | Callable[[], Stream], cls=Stream) -> Stream:
    """Finite prefix followed by ``rest`` (a stream or a thunk producing one)."""
    items = list(items)
    node = rest
    for value in reversed(items):
        node = _prepend(value, node, cls)
    if callable(node) and not isinstance(node, Stream):
        return delay(node, cls)
    return node


def _prepend(value, rest, cls):
    if isinstance(rest, Stream):
        return cls(LazyCell.of(value), LazyCell.of(rest))
    return cls(LazyCell.of(value), LazyCell(rest))


def map_stream(f: Callable[[Any], Any], s: Stream, cls=Stream) -> Stream:
    return cls.cons(lambda: f(s.head), lambda: map_stream(f, s.tail, cls))


def zip_with(op: Callable[[Any, Any], Any], s: Stream, t: Stream, cls=Stream) -> Stream:
    return cls.cons(lambda: op(s.head, t.head), lambda: zip_with(op, s.tail, t.tail, cls))


def _take(n: int, s: Stream) -> List[Any]:
    out = []
    node = s
    for i in range(n):
        out.append(node.head)
        if i + 1 < n:
            node = node.tail
    return out


def take(n: int, s: Stream) -> List[Any]:
    """First ``n`` heads; forces exactly those heads and the tails between them."""
    if n < 0:
        raise ValueError("take: n must be non-negative")
    return run_deep(_take, n, s)


def _drop(n: int, s: Stream) -> Stream:
    node = s
    for _ in range(n):
        node = node.tail
    return node


def drop(n: int, s: Stream) -> Stream:
    if n < 0:
        raise ValueError("drop: n must be non-negative")
    return run_deep(_drop, n, s)


class Prefix:
    """Growing list view of a stream for random access to forced elements.

    Walks the stream once; ``upto(n)`` returns a list with at least ``n + 1``
    elements.  Used by the coefficient recurrences that read whole prefixes.
    """

    __slots__ = ("items", "_node")

    def __init__(self, s: Stream):
        self.items: List[Any] = []
        self._node = s

    def upto(self, n: int) -> List[Any]:
        items = self.items
        while len(items) <= n:
            node = self._node
            items.append(node.head)
            self._node = node.tail
        return items

    def __getitem__(self, k: int):
        return self.upto(k)[k]


# -- deep evaluation -------------------------------------------------------

STACK_BYTES = 1 << 30
RECURSION_LIMIT = 2_000_000
_local = threading.local()


def run_deep(fn: Callable[..., Any], *args: Any) -> Any:
    """Call ``fn(*args)`` on a thread with a large stack.

    Re-entrant calls from inside such a thread run directly.
    """
    if getattr(_local, "deep", False):
        return fn(*args)
    box: dict = {}

    def target():
        _local.deep = True
        try:
            box["value"] = fn(*args)
        except BaseException as exc:  # re-raised in the caller's thread
            box["error"] = exc

    old_limit = sys.getrecursionlimit()
    old_size = threading.stack_size()
    sys.setrecursionlimit(max(old_limit, RECURSION_LIMIT))
    try:
        threading.stack_size(STACK_BYTES)
        try:
            worker = threading.Thread(target=target, name="towerseries-deep")
            worker.start()
        finally:
            threading.stack_size(old_size)
        worker.join()
    finally:
        sys.setrecursionlimit(old_limit)
    if "error" in box:
        raise box["error"]
    return box["value"]
