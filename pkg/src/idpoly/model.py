"""Squarefree monomial ideals and their 0-1 vertex polytopes.

A squarefree monomial is represented by its support, a frozenset of
variable names.  An ideal is an ordered variable alphabet plus an ordered
antichain of generator supports; the corresponding polytope has one 0-1
vertex per generator, the exponent vector over the declared variable order.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .intlinalg import matrix_rank


class InputError(ValueError):
    """User supplied data that cannot form a valid ideal or polytope."""


class DroppedGeneratorWarning(UserWarning):
    """A dominated generator was removed while minimalizing an ideal."""


def _check_variable_names(variables: Sequence[str]) -> None:
    seen: set[str] = set()
    for name in variables:
        if not name or not isinstance(name, str):
            raise InputError(f"invalid variable name {name!r}")
        if name in seen:
            raise InputError(f"duplicate variable name {name!r}")
        seen.add(name)


@dataclass(frozen=True)
class SquarefreeIdeal:
    """An ordered alphabet and an ordered antichain of generator supports.

    The generators must already be minimal (no support contained in
    another); use minimalize_generators to repair raw input.  Variables
    that divide no generator are legal and kept, so round trips through
    other representations preserve the declared alphabet.
    """

    variables: tuple[str, ...]
    generators: tuple[frozenset[str], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(
            self, "generators", tuple(frozenset(g) for g in self.generators)
        )
        _check_variable_names(self.variables)
        if not self.generators:
            raise InputError("an ideal needs at least one generator")
        alphabet = set(self.variables)
        for idx, gen in enumerate(self.generators, start=1):
            if not gen:
                raise InputError(f"generator {idx} is the unit monomial")
            stray = gen - alphabet
            if stray:
                raise InputError(
                    f"generator {idx} uses undeclared variable {min(stray)!r}"
                )
        for i, gi in enumerate(self.generators):
            for j, gj in enumerate(self.generators):
                if i != j and gi <= gj:
                    if gi == gj and i > j:
                        continue  # report each duplicate pair once
                    kind = "duplicates" if gi == gj else "divides"
                    raise InputError(
                        f"not minimal: generator {i + 1} {kind} generator {j + 1}"
                    )

    @property
    def num_variables(self) -> int:
        return len(self.variables)

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    def exponent_row(self, index: int) -> tuple[int, ...]:
        """0-1 exponent vector of generator ``index`` (0-based)."""
        gen = self.generators[index]
        return tuple(1 if v in gen else 0 for v in self.variables)

    def exponent_matrix(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.exponent_row(i) for i in range(len(self.generators)))

    def monomial_string(self, index: int) -> str:
        gen = self.generators[index]
        return "*".join(v for v in self.variables if v in gen)


def minimalize_generators(
    variables: Sequence[str], generators: Iterable[Iterable[str]]
) -> SquarefreeIdeal:
    """Build an ideal from raw generators, dropping dominated ones.

    A generator strictly containing another is redundant and removed with a
    DroppedGeneratorWarning.  Exact duplicates are rejected instead, since
    silently merging them would hide a likely input mistake.  Surviving
    generators keep their first-occurrence order.
    """
    supports = [frozenset(g) for g in generators]
    if not supports:
        raise InputError("an ideal needs at least one generator")
    seen: dict[frozenset[str], int] = {}
    for idx, sup in enumerate(supports, start=1):
        if sup in seen:
            raise InputError(f"generators {seen[sup]} and {idx} are identical")
        seen[sup] = idx
    keep: list[frozenset[str]] = []
    dropped: list[int] = []
    for idx, sup in enumerate(supports):
        if any(other < sup for other in supports if other != sup):
            dropped.append(idx + 1)
        else:
            keep.append(sup)
    if dropped:
        warnings.warn(
            f"dropped dominated generator(s) {dropped} during minimalization",
            DroppedGeneratorWarning,
            stacklevel=2,
        )
    return SquarefreeIdeal(tuple(variables), tuple(keep))


def generator_degrees(ideal: SquarefreeIdeal) -> tuple[int, ...]:
    return tuple(len(g) for g in ideal.generators)


def degrees_uniform(ideal: SquarefreeIdeal) -> bool:
    degrees = generator_degrees(ideal)
    return len(set(degrees)) == 1


@dataclass(frozen=True)
class ZeroOnePolytope:
    """Convex hull of distinct 0-1 vectors, stored by its vertex list.

    For 0-1 points the hull contains no lattice points besides the
    vertices themselves, so the vertex list determines everything the
    normality criterion needs.
    """

    vertices: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "vertices", tuple(tuple(v) for v in self.vertices)
        )
        if not self.vertices:
            raise InputError("a polytope needs at least one vertex")
        n = len(self.vertices[0])
        seen: set[tuple[int, ...]] = set()
        for idx, vertex in enumerate(self.vertices, start=1):
            if len(vertex) != n:
                raise InputError(f"vertex {idx} has mismatched dimension")
            if any(x not in (0, 1) for x in vertex):
                raise InputError(f"vertex {idx} has a coordinate outside 0/1")
            if vertex in seen:
                raise InputError(f"vertex {idx} duplicates an earlier vertex")
            seen.add(vertex)

    @property
    def ambient_dim(self) -> int:
        return len(self.vertices[0])

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @cached_property
    def affine_dimension(self) -> int:
        first = self.vertices[0]
        diffs = [
            [x - y for x, y in zip(v, first)] for v in self.vertices[1:]
        ]
        return matrix_rank(diffs) if diffs else 0


def polytope_from_ideal(ideal: SquarefreeIdeal) -> ZeroOnePolytope:
    """Vertex i is the exponent vector of generator i, in variable order."""
    return ZeroOnePolytope(ideal.exponent_matrix())


def affine_dimension(polytope: ZeroOnePolytope) -> int:
    return polytope.affine_dimension
