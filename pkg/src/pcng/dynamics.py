"""Sequential best-response dynamics with exact cycle detection."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .core import INF, GameParams, StrategyProfile
from .equilibrium import BEST_RESPONSE_CAP, ResourceLimitError, deviation_costs, is_nash


class Schedule(enum.Enum):
    ROUND_ROBIN = "round-robin"
    LARGEST_IMPROVEMENT = "largest-improvement"
    SEEDED_RANDOM = "random"


class Outcome(enum.Enum):
    CONVERGED = "converged"
    CYCLE = "cycle"
    MAX_ITERS = "max-iters"


@dataclass(frozen=True)
class Step:
    player: int
    old: frozenset[int]
    new: frozenset[int]
    delta: Fraction | float


@dataclass
class Trajectory:
    initial: StrategyProfile
    schedule: Schedule
    seed: int | None
    steps: list[Step] = field(default_factory=list)
    outcome: Outcome = Outcome.MAX_ITERS
    final: StrategyProfile | None = None
    cycle_start: int | None = None
    cycle_period: int | None = None

    def log(self) -> str:
        lines = []
        for k, s in enumerate(self.steps):
            lines.append(f"step {k}: player {s.player} {sorted(s.old)} -> {sorted(s.new)} "
                         f"delta {s.delta} ({float(s.delta):.6g})")
        if self.outcome is Outcome.CYCLE:
            lines.append(f"outcome: cycle (period {self.cycle_period}, "
                         f"starting after step {self.cycle_start})")
        else:
            lines.append(f"outcome: {self.outcome.value}")
        lines.append("final profile:")
        lines.append(self.final.to_text().rstrip("\n"))
        return "\n".join(lines) + "\n"


def _improvement(profile: StrategyProfile, u: int, params: GameParams):
    """Best strict improvement for u as ``(delta, strategy)``, or None.

    Among equally good responses the lexicographically smallest sorted target
    list wins.
    """
    current = None
    best = None
    for strategy, cost in deviation_costs(profile, u, params):
        if strategy == profile[u]:
            current = cost
        key = (cost, sorted(strategy))
        if best is None or key < best:
            best = key
    cost, targets = best
    if not cost < current:
        return None
    delta = cost - current if current != INF else -INF
    return delta, frozenset(targets)


def step(profile: StrategyProfile, u: int, params: GameParams,
         cap: int = BEST_RESPONSE_CAP) -> StrategyProfile | None:
    """Move u to her best response if that strictly lowers her cost, else None."""
    if profile.n > cap:
        raise ResourceLimitError(f"best response is exhaustive; n={profile.n} exceeds cap {cap}")
    found = _improvement(profile, u, params)
    return None if found is None else profile.replace(u, found[1])


def run(initial: StrategyProfile, params: GameParams,
        schedule: Schedule = Schedule.ROUND_ROBIN, max_iters: int = 1000,
        seed: int | None = None, cap: int = BEST_RESPONSE_CAP) -> Trajectory:
    """Iterate best responses until nobody moves, a profile repeats, or max_iters.

    ``max_iters`` counts player turns.  Round-robin visits players in id order;
    the random schedule shuffles the order every round with ``seed``; the
    largest-improvement schedule moves whoever gains most each turn.
    """
    if max_iters < 1:
        raise ValueError("max_iters must be >= 1")
    if initial.n > cap:
        raise ResourceLimitError(f"best response is exhaustive; n={initial.n} exceeds cap {cap}")
    n = initial.n
    rng = random.Random(seed)
    traj = Trajectory(initial, schedule, seed)
    profile = initial
    seen = {profile: 0}
    order: list[int] = []
    idle: set[int] = set()
    for _ in range(max_iters):
        if schedule is Schedule.LARGEST_IMPROVEMENT:
            moves = [(found[0], u, found[1]) for u in range(n)
                     if (found := _improvement(profile, u, params)) is not None]
            if not moves:
                traj.outcome = Outcome.CONVERGED
                break
            delta, u, new = min(moves, key=lambda m: (m[0], m[1]))
        else:
            if not order:
                order = list(range(n))
                if schedule is Schedule.SEEDED_RANDOM:
                    rng.shuffle(order)
            u = order.pop(0)
            found = _improvement(profile, u, params)
            if found is None:
                idle.add(u)
                if len(idle) == n:
                    traj.outcome = Outcome.CONVERGED
                    break
                continue
            delta, new = found
        idle.clear()
        traj.steps.append(Step(u, profile[u], new, delta))
        profile = profile.replace(u, new)
        if profile in seen:
            traj.outcome = Outcome.CYCLE
            traj.cycle_start = seen[profile]
            traj.cycle_period = len(traj.steps) - seen[profile]
            break
        seen[profile] = len(traj.steps)
    traj.final = profile
    if traj.outcome is Outcome.MAX_ITERS and is_nash(profile, params, cap).is_nash:
        traj.outcome = Outcome.CONVERGED
    return traj
