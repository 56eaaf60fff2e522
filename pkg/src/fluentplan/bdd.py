"""Reduced ordered binary decision diagrams.

A :class:`BddManager` owns a shared store of decision-diagram nodes over a
fixed variable order (variable index == position in the order).  Every
operation returns a canonical node, so two refs from the same manager are
equal if and only if they represent the same boolean function.  There are
no complement edges and no garbage collection: nodes live as long as the
manager does, which keeps handles stable and comparisons trivial.
"""

from __future__ import annotations

import sys
from collections.abc import Iterable, Iterator, Mapping, Sequence

# apply/exists recursions descend one variable per frame
sys.setrecursionlimit(max(sys.getrecursionlimit(), 20_000))


class BddError(Exception):
    """Base class for decision-diagram errors."""


class InvalidVariableError(BddError):
    """A variable index outside the manager's declared range."""


class ManagerMismatchError(BddError):
    """Refs from different managers were combined."""


class RenameOrderError(BddError):
    """A rename mapping would violate the fixed variable order."""


class IncompleteValuationError(BddError):
    """A valuation does not cover the support of the evaluated function."""


# node ids must fit the packed cache keys below
_NODE_LIMIT = 1 << 28

_OP_AND = 0
_OP_OR = 1
_OP_XOR = 2
_OP_IFF = 3
_OP_DIFF = 4

_OPS = {"and": _OP_AND, "or": _OP_OR, "xor": _OP_XOR, "iff": _OP_IFF, "diff": _OP_DIFF}


class BddRef:
    """Handle to a node of one manager.

    Refs compare equal exactly when they denote the same boolean function
    of the same manager (canonicity).  The boolean connectives are
    available as operators: ``&``, ``|``, ``^``, ``~``.
    """

    __slots__ = ("manager", "node")

    def __init__(self, manager: "BddManager", node: int):
        self.manager = manager
        self.node = node

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BddRef):
            return NotImplemented
        return self.manager is other.manager and self.node == other.node

    def __hash__(self) -> int:
        return hash((id(self.manager), self.node))

    def __repr__(self) -> str:
        return f"BddRef({self.node})"

    @property
    def is_false(self) -> bool:
        return self.node == 0

    @property
    def is_true(self) -> bool:
        return self.node == 1

    def __and__(self, other: "BddRef") -> "BddRef":
        return self.manager.apply("and", self, other)

    def __or__(self, other: "BddRef") -> "BddRef":
        return self.manager.apply("or", self, other)

    def __xor__(self, other: "BddRef") -> "BddRef":
        return self.manager.apply("xor", self, other)

    def __invert__(self) -> "BddRef":
        return self.manager.negate(self)


class BddManager:
    """Shared unique-table store for ROBDDs over variables ``0..num_vars-1``.

    The variable order is the index order and is fixed for the manager's
    lifetime.  Terminals are the nodes 0 (false) and 1 (true).  Operation
    results are memoized in per-manager caches that only grow; call
    :meth:`clear_caches` to drop them (the unique table is never cleared).

    A manager and all refs into it belong to one logical thread of
    control; refs must not be mixed across managers.
    """

    def __init__(self, num_vars: int):
        if num_vars < 0:
            raise InvalidVariableError(f"num_vars must be >= 0, got {num_vars}")
        self._num_vars = num_vars
        # parallel node arrays; terminals sit at a sentinel level past the
        # last real variable so level comparisons treat them as "below all"
        self._var: list[int] = [num_vars, num_vars]
        self._low: list[int] = [0, 1]
        self._high: list[int] = [0, 1]
        self._unique: dict[int, int] = {}
        self._apply_cache: dict[int, int] = {}
        self._neg_cache: dict[int, int] = {}
        self._ite_cache: dict[tuple[int, int, int], int] = {}
        self._exists_cache: dict[int, int] = {}
        self._and_exists_cache: dict[int, int] = {}
        self._rename_cache: dict[int, int] = {}
        # interned quantifier sets and rename maps, so cache keys stay small
        self._varset_tokens: dict[frozenset[int], int] = {}
        self._varsets: list[tuple[frozenset[int], int]] = []
        self._rename_tokens: dict[tuple[tuple[int, int], ...], int] = {}
        self.false = BddRef(self, 0)
        self.true = BddRef(self, 1)

    @property
    def num_vars(self) -> int:
        return self._num_vars

    def __len__(self) -> int:
        """Number of live internal nodes (terminals excluded)."""
        return len(self._var) - 2

    def __repr__(self) -> str:
        return f"<BddManager vars={self._num_vars} nodes={len(self)}>"

    # -- node plumbing ---------------------------------------------------

    def _node(self, f: BddRef) -> int:
        if not isinstance(f, BddRef):
            raise TypeError(f"expected BddRef, got {type(f).__name__}")
        if f.manager is not self:
            raise ManagerMismatchError("ref belongs to a different manager")
        return f.node

    def _mk(self, v: int, lo: int, hi: int) -> int:
        if lo == hi:
            return lo
        key = (v << 56) | (lo << 28) | hi
        n = self._unique.get(key)
        if n is None:
            n = len(self._var)
            if n >= _NODE_LIMIT:
                raise BddError("node limit exceeded")
            self._var.append(v)
            self._low.append(lo)
            self._high.append(hi)
            self._unique[key] = n
        return n

    # -- core operations -------------------------------------------------

    def var(self, v: int) -> BddRef:
        """The literal: false branch 0, true branch 1."""
        if not 0 <= v < self._num_vars:
            raise InvalidVariableError(
                f"variable {v} out of range 0..{self._num_vars - 1}"
            )
        return BddRef(self, self._mk(v, 0, 1))

    def apply(self, op: str, f: BddRef, g: BddRef) -> BddRef:
        """Combine two functions with ``and``/``or``/``xor``/``iff``/``diff``."""
        opc = _OPS.get(op)
        if opc is None:
            raise ValueError(f"unknown operator {op!r}; expected one of {sorted(_OPS)}")
        return BddRef(self, self._apply(opc, self._node(f), self._node(g)))

    def _apply(self, op: int, f: int, g: int) -> int:
        if op == _OP_AND:
            if f == 0 or g == 0:
                return 0
            if f == 1:
                return g
            if g == 1:
                return f
            if f == g:
                return f
        elif op == _OP_OR:
            if f == 1 or g == 1:
                return 1
            if f == 0:
                return g
            if g == 0:
                return f
            if f == g:
                return f
        elif op == _OP_XOR:
            if f == g:
                return 0
            if f == 0:
                return g
            if g == 0:
                return f
            if f == 1:
                return self._neg(g)
            if g == 1:
                return self._neg(f)
        elif op == _OP_IFF:
            if f == g:
                return 1
            if f == 1:
                return g
            if g == 1:
                return f
            if f == 0:
                return self._neg(g)
            if g == 0:
                return self._neg(f)
        else:  # diff: f and not g
            if f == 0 or g == 1 or f == g:
                return 0
            if g == 0:
                return f
            if f == 1:
                return self._neg(g)
        if op != _OP_DIFF and f > g:
            f, g = g, f
        key = (op << 56) | (f << 28) | g
        r = self._apply_cache.get(key)
        if r is not None:
            return r
        var = self._var
        vf = var[f]
        vg = var[g]
        v = vf if vf < vg else vg
        if vf == v:
            f0, f1 = self._low[f], self._high[f]
        else:
            f0 = f1 = f
        if vg == v:
            g0, g1 = self._low[g], self._high[g]
        else:
            g0 = g1 = g
        r = self._mk(v, self._apply(op, f0, g0), self._apply(op, f1, g1))
        self._apply_cache[key] = r
        return r

    def negate(self, f: BddRef) -> BddRef:
        """Canonical complement."""
        return BddRef(self, self._neg(self._node(f)))

    def _neg(self, f: int) -> int:
        if f < 2:
            return 1 - f
        r = self._neg_cache.get(f)
        if r is None:
            r = self._mk(self._var[f], self._neg(self._low[f]), self._neg(self._high[f]))
            self._neg_cache[f] = r
        return r

    def ite(self, f: BddRef, g: BddRef, h: BddRef) -> BddRef:
        """If-then-else: (f and g) or (not f and h)."""
        return BddRef(self, self._ite(self._node(f), self._node(g), self._node(h)))

    def _ite(self, f: int, g: int, h: int) -> int:
        if f == 1:
            return g
        if f == 0:
            return h
        if g == h:
            return g
        if g == 1 and h == 0:
            return f
        if g == 0 and h == 1:
            return self._neg(f)
        key = (f, g, h)
        r = self._ite_cache.get(key)
        if r is not None:
            return r
        var = self._var
        v = min(var[f], var[g], var[h])
        if var[f] == v:
            f0, f1 = self._low[f], self._high[f]
        else:
            f0 = f1 = f
        if var[g] == v:
            g0, g1 = self._low[g], self._high[g]
        else:
            g0 = g1 = g
        if var[h] == v:
            h0, h1 = self._low[h], self._high[h]
        else:
            h0 = h1 = h
        r = self._mk(v, self._ite(f0, g0, h0), self._ite(f1, g1, h1))
        self._ite_cache[key] = r
        return r

    # -- quantification and substitution ----------------------------------

    def _intern_varset(self, variables: Iterable[int]) -> int:
        vs = frozenset(variables)
        token = self._varset_tokens.get(vs)
        if token is None:
            for v in vs:
                if not 0 <= v < self._num_vars:
                    raise InvalidVariableError(f"variable {v} out of range")
            token = len(self._varsets)
            self._varset_tokens[vs] = token
            self._varsets.append((vs, max(vs) if vs else -1))
        return token

    def exists(self, f: BddRef, variables: Iterable[int]) -> BddRef:
        """Existential quantification: or of the two cofactors per variable."""
        token = self._intern_varset(variables)
        vs, maxv = self._varsets[token]
        return BddRef(self, self._exists(self._node(f), token, vs, maxv))

    def _exists(self, f: int, token: int, vs: frozenset[int], maxv: int) -> int:
        v = self._var[f]
        if v > maxv:  # also covers terminals (sentinel level)
            return f
        key = (token << 28) | f
        r = self._exists_cache.get(key)
        if r is not None:
            return r
        lo = self._low[f]
        hi = self._high[f]
        if v in vs:
            r0 = self._exists(lo, token, vs, maxv)
            if r0 == 1:
                r = 1
            else:
                r = self._apply(_OP_OR, r0, self._exists(hi, token, vs, maxv))
        else:
            r = self._mk(
                v,
                self._exists(lo, token, vs, maxv),
                self._exists(hi, token, vs, maxv),
            )
        self._exists_cache[key] = r
        return r

    def and_exists(self, f: BddRef, g: BddRef, variables: Iterable[int]) -> BddRef:
        """Relational product: exists(variables, f and g) without the full conjunction."""
        token = self._intern_varset(variables)
        vs, maxv = self._varsets[token]
        return BddRef(
            self, self._and_exists(self._node(f), self._node(g), token, vs, maxv)
        )

    def _and_exists(
        self, f: int, g: int, token: int, vs: frozenset[int], maxv: int
    ) -> int:
        if f == 0 or g == 0:
            return 0
        if f == 1:
            return self._exists(g, token, vs, maxv)
        if g == 1 or f == g:
            return self._exists(f, token, vs, maxv)
        if f > g:
            f, g = g, f
        var = self._var
        vf = var[f]
        vg = var[g]
        v = vf if vf < vg else vg
        if v > maxv:  # no quantified variable left in either operand
            return self._apply(_OP_AND, f, g)
        key = ((token << 28 | f) << 28) | g
        r = self._and_exists_cache.get(key)
        if r is not None:
            return r
        if vf == v:
            f0, f1 = self._low[f], self._high[f]
        else:
            f0 = f1 = f
        if vg == v:
            g0, g1 = self._low[g], self._high[g]
        else:
            g0 = g1 = g
        if v in vs:
            r0 = self._and_exists(f0, g0, token, vs, maxv)
            if r0 == 1:
                r = 1
            else:
                r = self._apply(
                    _OP_OR, r0, self._and_exists(f1, g1, token, vs, maxv)
                )
        else:
            r = self._mk(
                v,
                self._and_exists(f0, g0, token, vs, maxv),
                self._and_exists(f1, g1, token, vs, maxv),
            )
        self._and_exists_cache[key] = r
        return r

    def rename(self, f: BddRef, mapping: Mapping[int, int]) -> BddRef:
        """Substitute variables per ``mapping`` (unmapped variables stay).

        The mapping must be injective and must preserve the relative order
        of the ref's support once unmapped variables are filled in; this is
        enough for shifting between paired variable families and avoids a
        general reordering substitution.
        """
        n = self._node(f)
        for src, dst in mapping.items():
            if not (0 <= src < self._num_vars and 0 <= dst < self._num_vars):
                raise InvalidVariableError(f"rename pair {src}->{dst} out of range")
        sup = sorted(self._support(n))
        targets = [mapping.get(v, v) for v in sup]
        if any(b <= a for a, b in zip(targets, targets[1:])):
            raise RenameOrderError(
                "mapping does not preserve the variable order on the support"
            )
        items = tuple(sorted(mapping.items()))
        token = self._rename_tokens.setdefault(items, len(self._rename_tokens))
        return BddRef(self, self._rename(n, token, mapping))

    def _rename(self, f: int, token: int, mapping: Mapping[int, int]) -> int:
        if f < 2:
            return f
        key = (token << 28) | f
        r = self._rename_cache.get(key)
        if r is None:
            v = self._var[f]
            r = self._mk(
                mapping.get(v, v),
                self._rename(self._low[f], token, mapping),
                self._rename(self._high[f], token, mapping),
            )
            self._rename_cache[key] = r
        return r

    # -- inspection --------------------------------------------------------

    def evaluate(self, f: BddRef, valuation: Mapping[int, bool]) -> bool:
        """Value of the function at a valuation covering its support."""
        n = self._node(f)
        low = self._low
        high = self._high
        var = self._var
        while n >= 2:
            v = var[n]
            try:
                bit = valuation[v]
            except KeyError:
                raise IncompleteValuationError(
                    f"valuation has no value for variable {v}"
                ) from None
            n = high[n] if bit else low[n]
        return n == 1

    def sat_one(
        self, f: BddRef, support: Iterable[int]
    ) -> dict[int, bool] | None:
        """One satisfying valuation, or None for the false terminal.

        Deterministic: descends into the false branch whenever it is
        satisfiable, and variables not forced by the path default to
        False.  The result covers ``support`` plus any path variables.
        """
        n = self._node(f)
        if n == 0:
            return None
        out = {v: False for v in support}
        var = self._var
        low = self._low
        high = self._high
        while n >= 2:
            v = var[n]
            lo = low[n]
            if lo != 0:
                out[v] = False
                n = lo
            else:
                out[v] = True
                n = high[n]
        return out

    def sat_all(
        self, f: BddRef, support: Iterable[int]
    ) -> Iterator[dict[int, bool]]:
        """All satisfying valuations over ``support`` (false branches first)."""
        n = self._node(f)
        svars = sorted(set(support))
        missing = self._support(n) - set(svars)
        if missing:
            raise ValueError(f"support does not cover variables {sorted(missing)}")
        var = self._var
        low = self._low
        high = self._high

        def walk(node: int, i: int, acc: list[bool]) -> Iterator[dict[int, bool]]:
            if node == 0:
                return
            if i == len(svars):
                yield dict(zip(svars, acc))
                return
            if var[node] == svars[i]:
                lo, hi = low[node], high[node]
            else:
                lo = hi = node
            acc.append(False)
            yield from walk(lo, i + 1, acc)
            acc.pop()
            acc.append(True)
            yield from walk(hi, i + 1, acc)
            acc.pop()

        yield from walk(n, 0, [])

    def count_models(self, f: BddRef, support: Iterable[int]) -> int:
        """Number of satisfying valuations over ``support``."""
        n = self._node(f)
        svars = sorted(set(support))
        missing = self._support(n) - set(svars)
        if missing:
            raise ValueError(f"support does not cover variables {sorted(missing)}")
        pos = {v: i for i, v in enumerate(svars)}
        npos = len(svars)
        var = self._var
        low = self._low
        high = self._high

        def level(node: int) -> int:
            return pos[var[node]] if node >= 2 else npos

        memo: dict[int, int] = {}

        def count(node: int) -> int:
            # models over the support suffix starting at the node's level
            if node == 0:
                return 0
            if node == 1:
                return 1
            r = memo.get(node)
            if r is None:
                lo, hi = low[node], high[node]
                here = level(node)
                r = (count(lo) << (level(lo) - here - 1)) + (
                    count(hi) << (level(hi) - here - 1)
                )
                memo[node] = r
            return r

        return count(n) << level(n)

    def support(self, f: BddRef) -> set[int]:
        """Set of variables the function depends on."""
        return self._support(self._node(f))

    def _support(self, n: int) -> set[int]:
        seen = set()
        out: set[int] = set()
        stack = [n]
        while stack:
            m = stack.pop()
            if m < 2 or m in seen:
                continue
            seen.add(m)
            out.add(self._var[m])
            stack.append(self._low[m])
            stack.append(self._high[m])
        return out

    def node_count(self, f: BddRef) -> int:
        """Distinct internal nodes reachable from f (terminals excluded)."""
        n = self._node(f)
        seen = set()
        stack = [n]
        while stack:
            m = stack.pop()
            if m < 2 or m in seen:
                continue
            seen.add(m)
            stack.append(self._low[m])
            stack.append(self._high[m])
        return len(seen)

    def cache_size(self) -> int:
        """Total entries across the operation caches."""
        return (
            len(self._apply_cache)
            + len(self._neg_cache)
            + len(self._ite_cache)
            + len(self._exists_cache)
            + len(self._and_exists_cache)
            + len(self._rename_cache)
        )

    def clear_caches(self) -> None:
        """Drop all memoized operation results (the unique table stays)."""
        self._apply_cache.clear()
        self._neg_cache.clear()
        self._ite_cache.clear()
        self._exists_cache.clear()
        self._and_exists_cache.clear()
        self._rename_cache.clear()

    # -- debug output ------------------------------------------------------

    def to_dot(self, f: BddRef, var_names: Sequence[str] | None = None) -> str:
        """DOT graph of the diagram rooted at f.

        Solid edges take the true branch, dashed edges the false branch.
        ``var_names[v]`` labels variable v; indices are used otherwise.
        """
        n = self._node(f)
        by_var: dict[int, list[int]] = {}
        seen = set()
        stack = [n]
        while stack:
            m = stack.pop()
            if m < 2 or m in seen:
                continue
            seen.add(m)
            by_var.setdefault(self._var[m], []).append(m)
            stack.append(self._low[m])
            stack.append(self._high[m])

        def name(v: int) -> str:
            if var_names is not None and v < len(var_names):
                return str(var_names[v])
            return f"x{v}"

        lines = ["digraph bdd {"]
        lines.append("  node [shape=circle];")
        lines.append('  t0 [shape=box, label="0"];')
        lines.append('  t1 [shape=box, label="1"];')
        for v in sorted(by_var):
            members = " ".join(f"n{m};" for m in sorted(by_var[v]))
            lines.append(f"  {{ rank=same; {members} }}")
            for m in sorted(by_var[v]):
                lines.append(f'  n{m} [label="{name(v)}"];')
        for m in sorted(seen):
            for child, style in ((self._low[m], "dashed"), (self._high[m], "solid")):
                target = f"t{child}" if child < 2 else f"n{child}"
                lines.append(f"  n{m} -> {target} [style={style}];")
        if n < 2:
            lines.append('  root [shape=plaintext, label=""];')
            lines.append(f"  root -> t{n};")
        lines.append("}")
        return "\n".join(lines)
