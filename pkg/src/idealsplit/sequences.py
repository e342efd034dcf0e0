"""Exact-sequence machinery: exactness, purity, splitting search.

A Complex is a chain of composable homs; a ShortExact wraps the
five-term shape 0 -> A -> B -> C -> 0.  The two splitting searches at
the bottom are deliberately different routes to the same answer: the
solver is the production path, the exhaustive enumeration is the oracle
it is checked against.
"""

import itertools

from . import fgab
from .errors import (
    AmbientMismatchError,
    NotASplittingError,
    NotExactError,
    SizeBoundError,
)


class Complex:
    """A chain of groups with composable maps, maps[i]: groups[i] -> groups[i+1]."""

    __slots__ = ("groups", "maps")

    def __init__(self, groups, maps, require_complex=False):
        groups = tuple(groups)
        maps = tuple(maps)
        if len(maps) != len(groups) - 1:
            raise AmbientMismatchError(
                "%d maps cannot connect %d groups" % (len(maps), len(groups)))
        for i, f in enumerate(maps):
            if f.domain != groups[i] or f.codomain != groups[i + 1]:
                raise AmbientMismatchError("map %d does not connect its groups" % i)
        if require_complex:
            for i in range(len(maps) - 1):
                comp = maps[i + 1] @ maps[i]
                if comp != fgab.GroupHom.zero(comp.domain, comp.codomain):
                    raise NotExactError(
                        "composite of maps %d and %d is nonzero" % (i, i + 1))
        object.__setattr__(self, "groups", groups)
        object.__setattr__(self, "maps", maps)

    def __setattr__(self, name, value):
        raise AttributeError("Complex is immutable")

    def __len__(self):
        return len(self.groups)

    def __eq__(self, other):
        return (isinstance(other, Complex) and self.groups == other.groups
                and self.maps == other.maps)

    def __hash__(self):
        return hash((self.groups, self.maps))


def is_exact(c, position):
    """Exactness at one interior position: kernel out = image in."""
    if not 1 <= position <= len(c.groups) - 2:
        raise IndexError("no interior position %d in a %d-term complex"
                         % (position, len(c.groups)))
    return fgab.kernel(c.maps[position]) == fgab.image(c.maps[position - 1])


def is_exact_everywhere(c):
    return all(is_exact(c, p) for p in range(1, len(c.groups) - 1))


_TRIVIAL = fgab.FgGroup()


class ShortExact:
    """0 -> A -> B -> C -> 0 as a five-term complex."""

    __slots__ = ("complex",)

    def __init__(self, complex):
        if len(complex.groups) != 5 or not complex.groups[0].is_trivial() \
                or not complex.groups[4].is_trivial():
            raise AmbientMismatchError(
                "short exact sequences have shape 0 -> A -> B -> C -> 0")
        object.__setattr__(self, "complex", complex)

    def __setattr__(self, name, value):
        raise AttributeError("ShortExact is immutable")

    @classmethod
    def from_maps(cls, left, right):
        """Assemble the five-term complex around A -> B -> C."""
        if left.codomain != right.domain:
            raise AmbientMismatchError("left and right maps do not meet")
        a, b, c = left.domain, left.codomain, right.codomain
        return cls(Complex(
            (_TRIVIAL, a, b, c, _TRIVIAL),
            (fgab.GroupHom.zero(_TRIVIAL, a), left, right,
             fgab.GroupHom.zero(c, _TRIVIAL))))

    @property
    def a(self):
        return self.complex.groups[1]

    @property
    def b(self):
        return self.complex.groups[2]

    @property
    def c(self):
        return self.complex.groups[3]

    @property
    def left(self):
        return self.complex.maps[1]

    @property
    def right(self):
        return self.complex.maps[2]

    def validate(self):
        """Raise NotExactError unless the sequence is exact at A, B and C."""
        for position, label in ((1, "left term (injectivity)"),
                                (2, "middle term"),
                                (3, "right term (surjectivity)")):
            if not is_exact(self.complex, position):
                raise NotExactError("sequence fails at the %s" % label)

    def is_valid(self):
        try:
            self.validate()
        except NotExactError:
            return False
        return True

    def __eq__(self, other):
        return isinstance(other, ShortExact) and self.complex == other.complex

    def __hash__(self):
        return hash(self.complex)


def is_pure_exact(s):
    """Purity of a short exact sequence: the left image is a pure subgroup."""
    s.validate()
    return fgab.image(s.left).is_pure()


def enumerate_splittings(s, bound=256):
    """Every splitting of a short exact sequence, by exhaustion.

    Returns all homs sigma: C -> B with right . sigma = id, sorted by
    matrix for a deterministic order.  This is the oracle the
    constrained solver is validated against; it is exponential by
    design and refuses groups beyond the bound.
    """
    s.validate()
    b, c = s.b, s.c
    right = s.right
    if b.size() is None or c.size() is None:
        raise SizeBoundError("splitting enumeration needs finite groups")
    if c.size() > bound:
        raise SizeBoundError("|C| = %d exceeds the bound %d" % (c.size(), bound))
    gens = c.gens()
    orders = c.orders
    candidates = []
    for j, gen in enumerate(gens):
        pool = [x for x in b.elements()
                if right(x) == gen and b.scale(orders[j], x) == b.zero()]
        candidates.append(pool)
    found = []
    for combo in itertools.product(*candidates):
        found.append(fgab.GroupHom.from_images(c, b, [list(x) for x in combo]))
    found.sort(key=lambda h: h.matrix)
    return found


def find_splitting_constrained(s, partial=None, sub=None, variant="min"):
    """A splitting agreeing with a partial one on a subgroup of C.

    ``partial`` is a hom from ``sub.as_group()``'s group into B that
    already splits the sequence over ``sub``; pass None for an
    unconstrained search.  Returns the canonical solution of the linear
    system (splitting condition plus agreement), or None when no such
    splitting exists.  None is an answer, not an error.
    """
    s.validate()
    points = []
    if partial is not None:
        if sub is None or sub.ambient != s.c:
            raise AmbientMismatchError("partial splitting needs a subgroup of C")
        group, incl, _ = sub.as_group()
        if partial.domain != group or partial.codomain != s.b:
            raise AmbientMismatchError("partial map has the wrong ends")
        for e in group.gens():
            if s.right(partial(e)) != incl(e):
                raise NotASplittingError(
                    "partial map is not a splitting over its subgroup")
            points.append((incl(e), partial(e)))
    return fgab.solve_hom(
        s.c, s.b, point_constraints=points,
        left_constraints=[(s.right, fgab.GroupHom.identity(s.c))],
        variant=variant)
