"""Exact-arithmetic instance/allocation model and the (1-eps)-EFX verifier.

All valuations are exact rationals (``fractions.Fraction``).  Every predicate
in the library reduces to integer comparisons on a single globally scaled
copy of the valuation matrix, so no floating point is involved anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Sequence

from .errors import InvalidInputError

Rational = Fraction


def parse_rational(text) -> Fraction:
    """Parse an integer, ``"p/q"`` string, or int into an exact rational."""
    if isinstance(text, bool):
        raise InvalidInputError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if isinstance(text, str):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"not a rational: {text!r}") from exc
    raise InvalidInputError(f"not a rational: {text!r}")


def format_rational(value: Fraction):
    """Serialize a rational as an int (when integral) or a ``"p/q"`` string."""
    if value.denominator == 1:
        return int(value)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Instance:
    """A fair-division instance: agents, goods, valuations, and the slack eps.

    ``valuations[i][g]`` is agent ``i``'s value for good ``g``.  Valuations are
    additive over bundles.  ``epsilon`` must lie in (0, 1/2].
    """

    num_agents: int
    num_goods: int
    valuations: tuple
    epsilon: Fraction

    def __post_init__(self):
        if self.num_agents < 1:
            raise InvalidInputError("need at least one agent")
        if self.num_goods < 0:
            raise InvalidInputError("negative number of goods")
        if not (0 < self.epsilon <= Fraction(1, 2)):
            raise InvalidInputError("epsilon must lie in (0, 1/2]")
        if len(self.valuations) != self.num_agents:
            raise InvalidInputError("valuation matrix has wrong number of rows")
        for row in self.valuations:
            if len(row) != self.num_goods:
                raise InvalidInputError("valuation row has wrong length")
            for v in row:
                if v < 0:
                    raise InvalidInputError("valuations must be non-negative")

    @classmethod
    def from_values(cls, values: Sequence[Sequence], epsilon) -> "Instance":
        rows = tuple(tuple(parse_rational(v) for v in row) for row in values)
        m = len(rows[0]) if rows else 0
        return cls(len(rows), m, rows, parse_rational(epsilon))

    @cached_property
    def scale(self) -> int:
        """Common denominator: ``valuations[i][g] * scale`` is an integer."""
        denoms = [v.denominator for row in self.valuations for v in row]
        return lcm(*denoms) if denoms else 1

    @cached_property
    def scaled_values(self) -> tuple:
        """Integer valuation matrix ``valuations * scale``."""
        s = self.scale
        return tuple(
            tuple(int(v * s) for v in row) for row in self.valuations
        )

    @property
    def eps_fraction(self) -> tuple:
        """(p, q) with epsilon = p/q in lowest terms."""
        return self.epsilon.numerator, self.epsilon.denominator

    def value(self, agent: int, good: int) -> Fraction:
        return self.valuations[agent][good]


@dataclass(frozen=True)
class PartialAllocation:
    """Disjoint bundles plus an unallocated pool, partitioning the good set."""

    bundles: tuple
    pool: frozenset

    @classmethod
    def from_sets(cls, bundles: Iterable[Iterable[int]], pool: Iterable[int]) -> "PartialAllocation":
        return cls(tuple(frozenset(b) for b in bundles), frozenset(pool))

    @classmethod
    def empty(cls, instance: Instance) -> "PartialAllocation":
        return cls(
            tuple(frozenset() for _ in range(instance.num_agents)),
            frozenset(range(instance.num_goods)),
        )

    def validate_for(self, instance: Instance) -> None:
        if len(self.bundles) != instance.num_agents:
            raise InvalidInputError("allocation has wrong number of bundles")
        seen: set = set()
        for part in (*self.bundles, self.pool):
            if part & seen:
                raise InvalidInputError("bundles and pool are not disjoint")
            seen |= part
        if seen != set(range(instance.num_goods)):
            raise InvalidInputError("bundles and pool do not cover the good set")

    def owners(self, instance: Instance) -> tuple:
        """Owner index per good; ``num_agents`` encodes the pool."""
        out = [instance.num_agents] * instance.num_goods
        for i, bundle in enumerate(self.bundles):
            for g in bundle:
                out[g] = i
        return tuple(out)

    def replace_bundle(self, agent: int, bundle: frozenset, pool: frozenset) -> "PartialAllocation":
        bundles = list(self.bundles)
        bundles[agent] = frozenset(bundle)
        return PartialAllocation(tuple(bundles), frozenset(pool))


@dataclass
class EfxReport:
    """Outcome of the (1-eps)-EFX check for a partial allocation."""

    is_efx: bool
    violations: list = field(default_factory=list)
    pool_heavy_enviers: list = field(default_factory=list)


def bundle_value(instance: Instance, agent: int, goods: Iterable[int]) -> Fraction:
    """Exact additive value of a bundle for one agent."""
    if not 0 <= agent < instance.num_agents:
        raise InvalidInputError(f"agent index out of range: {agent}")
    row = instance.valuations[agent]
    total = Fraction(0)
    for g in goods:
        if not 0 <= g < instance.num_goods:
            raise InvalidInputError(f"good index out of range: {g}")
        total += row[g]
    return total


def scaled_bundle_value(instance: Instance, agent: int, goods: Iterable[int]) -> int:
    """Bundle value on the integer-scaled matrix (internal fast path)."""
    row = instance.scaled_values[agent]
    return sum(row[g] for g in goods)


def verify_partial_efx(instance: Instance, alloc: PartialAllocation) -> EfxReport:
    """Check the (1-eps)-EFX property and heavy envy toward the pool.

    A violation (i, j, g) means agent i still heavily envies agent j's bundle
    after removing good g from it: v_i(X_i) < (1-eps) * v_i(X_j \\ {g}).
    """
    alloc.validate_for(instance)
    p, q = instance.eps_fraction
    rows = instance.scaled_values
    n = instance.num_agents

    own = [sum(rows[i][g] for g in alloc.bundles[i]) for i in range(n)]
    report = EfxReport(is_efx=True)
    for j in range(n):
        bundle = sorted(alloc.bundles[j])
        if not bundle:
            continue
        for i in range(n):
            if i == j:
                continue
            total = sum(rows[i][g] for g in bundle)
            for g in bundle:
                if q * own[i] < (q - p) * (total - rows[i][g]):
                    report.violations.append((i, j, g))
    pool_total = [sum(rows[i][g] for g in alloc.pool) for i in range(n)]
    for i in range(n):
        if q * own[i] < (q - p) * pool_total[i]:
            report.pool_heavy_enviers.append(i)
    report.is_efx = not report.violations
    return report


def nash_welfare_product(instance: Instance, alloc: PartialAllocation) -> Fraction:
    """Exact product of own-bundle values (n-th root is display-only)."""
    alloc.validate_for(instance)
    product = Fraction(1)
    for i in range(instance.num_agents):
        product *= bundle_value(instance, i, alloc.bundles[i])
    return product


def value_vector(instance: Instance, alloc: PartialAllocation) -> tuple:
    """Per-agent own-bundle values, in agent order."""
    return tuple(
        bundle_value(instance, i, alloc.bundles[i])
        for i in range(instance.num_agents)
    )
