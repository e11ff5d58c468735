"""Search budgets shared by all decision procedures."""

from __future__ import annotations

import dataclasses


@dataclasses.dataclass(frozen=True)
class Limits:
    """
    Every potentially unbounded search in the engine draws its budget from
    one of these knobs.  Exceeding a budget is always reported (Inconclusive,
    Diverged, Unbounded, ExplosionGuard), never silently truncated.
    """

    fuel_factor: int = 16          # reversing fuel = fuel_factor * (input length)^2
    rewrite_slack: int = 8         # rewriting closure depth = word length + slack
    rewrite_states: int = 200_000  # cap on distinct words visited by the closure
    cube_depth: int = 1            # cube condition checked on words of length <= depth
    node_budget: int = 100_000     # sliding-circuit BFS node cap
    family_search_bound: int = 64  # candidate family size cap for `auto` search
    divisor_search_bound: int = 512  # divisor enumeration cap in build_garside_map
    group_size_bound: int = 1024   # Coxeter group enumeration cap (germ route)

    def fuel(self, length: int) -> int:
        return max(1, self.fuel_factor * max(1, length) ** 2)


DEFAULT_LIMITS = Limits()
