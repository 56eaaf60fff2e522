"""Static variable orders for the state-variable encoding.

The decision-diagram sizes depend heavily on how fluents are arranged.
Two heuristics are provided: plain lexical order, and a sort-driven order
that groups fluents sharing constants of large sorts.  Each fluent then
gets an adjacent pair of variables (current state, next state).
"""

from __future__ import annotations

from dataclasses import dataclass
from collections.abc import Iterable, Sequence

from .domain import Fluent, Sort, fluent_sort_key


@dataclass(frozen=True)
class VariableOrder:
    """A permutation of the fluent universe plus the strategy that made it."""

    strategy: str
    fluents: tuple[Fluent, ...]


def lexical_order(universe: Sequence[Fluent]) -> VariableOrder:
    """Order by symbol name, then argument constants left to right."""
    return VariableOrder("lexical", tuple(sorted(universe, key=fluent_sort_key)))


def sort_order(universe: Sequence[Fluent], sorts: Sequence[Sort]) -> VariableOrder:
    """Group fluents by shared arguments, largest sort first.

    Fluents are keyed by the constant of their leftmost argument of the
    largest sort, then of the second largest, and so on; a fluent without
    an argument of the current sort compares after those that have one.
    Sort-size ties break by declaration order, constants compare by their
    position in the sort declaration, and the final tie break is the
    lexical rule.
    """
    keyed_sorts = sorted(
        range(len(sorts)), key=lambda i: (-len(sorts[i].constants), i)
    )
    const_pos = {
        sorts[i].name: {c: j for j, c in enumerate(sorts[i].constants)}
        for i in keyed_sorts
    }

    def key(fluent: Fluent) -> tuple:
        parts: list[object] = []
        for i in keyed_sorts:
            name = sorts[i].name
            positions = const_pos[name]
            component = len(positions)  # after every real constant
            for sort_name, const in fluent.args:
                if sort_name == name:
                    component = positions[const]
                    break
            parts.append(component)
        parts.append(fluent.symbol)
        parts.append(fluent.constants)
        return tuple(parts)

    return VariableOrder("sort", tuple(sorted(universe, key=key)))


def explicit_order(
    universe: Sequence[Fluent], fluents: Iterable[Fluent]
) -> VariableOrder:
    """User-supplied order; must be a permutation of the universe."""
    listed = tuple(fluents)
    if set(listed) != set(universe) or len(listed) != len(universe):
        raise ValueError("explicit order is not a permutation of the fluent universe")
    return VariableOrder("explicit", listed)


@dataclass(frozen=True, eq=False)
class VarMap:
    """Interleaved variable families: fluent i owns variables 2i and 2i+1.

    ``cur`` maps each fluent to its current-state variable (even index),
    ``nxt`` to its next-state variable (the odd neighbour); keeping the
    pair adjacent is what makes frame constraints cheap.
    """

    fluents: tuple[Fluent, ...]
    cur: dict
    nxt: dict
    cur_vars: tuple[int, ...]
    nxt_vars: tuple[int, ...]
    cur_to_nxt: dict
    nxt_to_cur: dict

    @property
    def num_vars(self) -> int:
        return 2 * len(self.fluents)

    def fluent_of(self, var: int) -> Fluent:
        """The fluent owning a variable of either family."""
        return self.fluents[var // 2]

    def var_names(self) -> list[str]:
        """Display names for all variables, for debug dumps."""
        names = []
        for fl in self.fluents:
            names.append(str(fl))
            names.append(f"{fl}'")
        return names


def interleave(order: VariableOrder) -> VarMap:
    """Assign the variable pair (2i, 2i+1) to the fluent at position i."""
    cur = {fl: 2 * i for i, fl in enumerate(order.fluents)}
    nxt = {fl: 2 * i + 1 for i, fl in enumerate(order.fluents)}
    return VarMap(
        fluents=order.fluents,
        cur=cur,
        nxt=nxt,
        cur_vars=tuple(2 * i for i in range(len(order.fluents))),
        nxt_vars=tuple(2 * i + 1 for i in range(len(order.fluents))),
        cur_to_nxt={2 * i: 2 * i + 1 for i in range(len(order.fluents))},
        nxt_to_cur={2 * i + 1: 2 * i for i in range(len(order.fluents))},
    )
