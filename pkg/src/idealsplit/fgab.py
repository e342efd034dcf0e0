"""Finitely generated abelian groups in canonical invariant-factor form.

A group is ``Z/d1 + ... + Z/dk + Z^r`` with d1 | d2 | ... | dk, every
factor at least 2.  Elements are coordinate tuples, torsion coordinates
first (reduced mod their factor), free coordinates last (any integer).
Keeping every group in this one canonical shape makes group equality a
tuple comparison and keeps homomorphisms plain integer matrices.

All arithmetic is exact; the heavy lifting happens in ``intmat``.
"""

import itertools
from math import gcd

from . import intmat
from .errors import (
    AmbientMismatchError,
    HomDefinitionError,
    NotSubgroupError,
    SizeBoundError,
)


def _lcm(a, b):
    return a * b // gcd(a, b) if a and b else 0


class FgGroup:
    """A finitely generated abelian group in invariant-factor form."""

    __slots__ = ("invariant_factors", "free_rank")

    def __init__(self, invariant_factors=(), free_rank=0):
        factors = tuple(int(d) for d in invariant_factors)
        for d in factors:
            if d < 2:
                raise ValueError("invariant factors must be >= 2, got %d" % d)
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise ValueError("broken divisibility chain: %d does not divide %d" % (a, b))
        if free_rank < 0:
            raise ValueError("negative free rank")
        object.__setattr__(self, "invariant_factors", factors)
        object.__setattr__(self, "free_rank", int(free_rank))

    def __setattr__(self, name, value):
        raise AttributeError("FgGroup is immutable")

    @property
    def rank(self):
        """Number of coordinates (torsion factors plus free rank)."""
        return len(self.invariant_factors) + self.free_rank

    @property
    def orders(self):
        """Per-coordinate orders, 0 marking an infinite (free) coordinate."""
        return self.invariant_factors + (0,) * self.free_rank

    def is_trivial(self):
        return self.rank == 0

    def is_finite(self):
        return self.free_rank == 0

    def is_torsion_free(self):
        return not self.invariant_factors

    def size(self):
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    def exponent(self):
        """lcm of all element orders; 0 when the group is infinite."""
        if self.free_rank:
            return 0
        e = 1
        for d in self.invariant_factors:
            e = _lcm(e, d)
        return e

    def zero(self):
        return (0,) * self.rank

    def reduce(self, vec):
        """Canonical coordinates: torsion entries into [0, d), frees kept."""
        if len(vec) != self.rank:
            raise ValueError("element has %d coordinates, expected %d"
                             % (len(vec), self.rank))
        orders = self.orders
        return tuple(int(x) % d if d else int(x) for x, d in zip(vec, orders))

    def add(self, a, b):
        return self.reduce([x + y for x, y in zip(a, b)])

    def neg(self, a):
        return self.reduce([-x for x in a])

    def sub(self, a, b):
        return self.reduce([x - y for x, y in zip(a, b)])

    def scale(self, k, a):
        return self.reduce([k * x for x in a])

    def gens(self):
        """Standard generators, one per coordinate."""
        return [tuple(1 if j == i else 0 for j in range(self.rank))
                for i in range(self.rank)]

    def element_order(self, vec):
        """Order of an element; 0 means infinite."""
        vec = self.reduce(vec)
        n = 1
        for x, d in zip(vec, self.orders):
            if x == 0:
                continue
            if d == 0:
                return 0
            n = _lcm(n, d // gcd(d, x))
        return n

    def elements(self):
        """All elements in lexicographic coordinate order (finite only)."""
        if self.free_rank:
            raise SizeBoundError("cannot enumerate an infinite group")
        return (tuple(t) for t in
                itertools.product(*(range(d) for d in self.invariant_factors)))

    def __eq__(self, other):
        return (isinstance(other, FgGroup)
                and self.invariant_factors == other.invariant_factors
                and self.free_rank == other.free_rank)

    def __hash__(self):
        return hash((self.invariant_factors, self.free_rank))

    def __repr__(self):
        if self.rank == 0:
            return "FgGroup(0)"
        parts = ["Z/%d" % d for d in self.invariant_factors]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append("Z^%d" % self.free_rank)
        return "FgGroup(%s)" % " + ".join(parts)


def snf(mat, cols=None):
    """Smith normal form: returns (U, D, V) with U @ mat @ V = D.

    U and V are unimodular; D is diagonal, nonnegative, with each entry
    dividing the next.  Pivoting is deterministic (least absolute value,
    ties by lowest row then column).
    """
    d, u, _, v, _ = intmat.smith_form(mat, cols)
    return u, d, v


def _presentation(rel, gens=None):
    """Cokernel data for a relation matrix (rows are relations).

    Returns ``(group, proj, lift)`` where ``proj`` (group.rank x gens)
    sends generator-exponent vectors to group coordinates, ``lift``
    (gens x group.rank) is an integer section with proj @ lift = I.
    """
    if rel:
        gens = len(rel[0])
    elif gens is None:
        raise ValueError("empty relation matrix needs an explicit generator count")
    mat = intmat.transpose(rel, gens)
    d, u, uinv, _, _ = intmat.smith_form(mat, cols=len(rel))
    diag = intmat.smith_diagonal(d) + [0] * gens
    kept = [i for i in range(gens) if diag[i] != 1]
    factors = tuple(diag[i] for i in kept if diag[i] > 1)
    free = sum(1 for i in kept if diag[i] == 0)
    group = FgGroup(factors, free)
    proj = [u[i][:] for i in kept]
    lift = [[uinv[r][i] for i in kept] for r in range(gens)]
    return group, proj, lift


def group_from_presentation(rel, gens=None):
    """Cokernel of a relation matrix in canonical invariant-factor form.

    Each row of ``rel`` is one relation over the generators (one column
    per generator).  Factors equal to 1 are dropped; generators free of
    relations contribute free rank.  ``gens`` is required only when the
    relation matrix is empty.
    """
    return _presentation(rel, gens)[0]


class GroupHom:
    """Homomorphism between FgGroups, stored as an integer matrix.

    ``matrix`` has one row per codomain coordinate and one column per
    domain generator; column j holds the coordinates of the image of
    generator j.  Construction verifies the relations are respected and
    normalizes entries modulo the codomain orders.
    """

    __slots__ = ("domain", "codomain", "matrix")

    def __init__(self, domain, codomain, matrix):
        if len(matrix) != codomain.rank or any(
                len(row) != domain.rank for row in matrix):
            raise HomDefinitionError(
                "matrix shape does not match %dx%d"
                % (codomain.rank, domain.rank))
        cod_orders = codomain.orders
        dom_orders = domain.orders
        norm = []
        for i in range(codomain.rank):
            e = cod_orders[i]
            norm.append(tuple(int(x) % e if e else int(x) for x in matrix[i]))
        for j in range(domain.rank):
            d = dom_orders[j]
            if d == 0:
                continue
            for i in range(codomain.rank):
                e = cod_orders[i]
                bad = (norm[i][j] * d % e) if e else (norm[i][j] * d)
                if bad:
                    raise HomDefinitionError(
                        "entry (%d,%d) breaks relation: %d * order %d != 0 "
                        "mod %s" % (i, j, norm[i][j], d, e or "0 (free)"))
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "codomain", codomain)
        object.__setattr__(self, "matrix", tuple(norm))

    def __setattr__(self, name, value):
        raise AttributeError("GroupHom is immutable")

    @classmethod
    def identity(cls, group):
        return cls(group, group, intmat.identity(group.rank))

    @classmethod
    def zero(cls, domain, codomain):
        return cls(domain, codomain, intmat.zeros(codomain.rank, domain.rank))

    @classmethod
    def from_images(cls, domain, codomain, images):
        """Build a hom from the list of generator images."""
        if len(images) != domain.rank:
            raise HomDefinitionError("need %d generator images, got %d"
                                     % (domain.rank, len(images)))
        matrix = [[int(img[i]) for img in images] for i in range(codomain.rank)]
        return cls(domain, codomain, matrix)

    def _rows(self):
        return [list(r) for r in self.matrix]

    def __call__(self, vec):
        vec = self.domain.reduce(vec)
        return self.codomain.reduce(intmat.matvec(self._rows(), list(vec)))

    def __matmul__(self, other):
        if not isinstance(other, GroupHom):
            return NotImplemented
        if other.codomain != self.domain:
            raise AmbientMismatchError("composition domains do not line up")
        prod = intmat.matmul(self._rows(), other._rows(),
                             bcols=other.domain.rank)
        if not prod:
            prod = intmat.zeros(self.codomain.rank, other.domain.rank)
        return GroupHom(other.domain, self.codomain, prod)

    def __add__(self, other):
        if not isinstance(other, GroupHom):
            return NotImplemented
        if other.domain != self.domain or other.codomain != self.codomain:
            raise AmbientMismatchError("sum of homs with different ends")
        return GroupHom(self.domain, self.codomain,
                        [[a + b for a, b in zip(r1, r2)]
                         for r1, r2 in zip(self.matrix, other.matrix)])

    def __neg__(self):
        return GroupHom(self.domain, self.codomain,
                        [[-a for a in row] for row in self.matrix])

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return (isinstance(other, GroupHom)
                and self.domain == other.domain
                and self.codomain == other.codomain
                and self.matrix == other.matrix)

    def __hash__(self):
        return hash((self.domain, self.codomain, self.matrix))

    def __repr__(self):
        return "GroupHom(%r -> %r, %r)" % (self.domain, self.codomain,
                                           [list(r) for r in self.matrix])

    def image(self):
        return image(self)

    def kernel(self):
        return kernel(self)

    def is_injective(self):
        return kernel(self).is_zero()

    def is_surjective(self):
        return image(self).is_full()

    def is_iso(self):
        return self.is_injective() and self.is_surjective()

    def inverse(self):
        """Exact two-sided inverse; raises if the hom is not an iso."""
        points = [(self(e), e) for e in self.domain.gens()]
        inv = solve_hom(self.codomain, self.domain, point_constraints=points,
                        left_constraints=[(self, GroupHom.identity(self.codomain))])
        if inv is None:
            raise HomDefinitionError("hom is not invertible")
        return inv


class Subgroup:
    """Subgroup of an FgGroup, canonicalized for equality and hashing.

    ``generators`` always holds the canonical Hermite-reduced generating
    rows of the coordinate lattice (original generators plus the ambient
    relations), so two subgroups are equal iff the tuples match.
    """

    __slots__ = ("ambient", "generators", "_group_cache")

    def __init__(self, ambient, gens):
        rows = []
        for g in gens:
            if len(g) != ambient.rank:
                raise AmbientMismatchError(
                    "generator has %d coordinates, ambient rank is %d"
                    % (len(g), ambient.rank))
            rows.append([int(x) for x in g])
        for i, d in enumerate(ambient.orders):
            if d:
                rows.append([d if j == i else 0 for j in range(ambient.rank)])
        basis = intmat.hnf_nonzero(rows, cols=ambient.rank)
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "generators", tuple(tuple(r) for r in basis))
        object.__setattr__(self, "_group_cache", [None])

    def __setattr__(self, name, value):
        raise AttributeError("Subgroup is immutable")

    @classmethod
    def zero(cls, ambient):
        return cls(ambient, [])

    @classmethod
    def full(cls, ambient):
        return cls(ambient, ambient.gens())

    def _basis_rows(self):
        return [list(r) for r in self.generators]

    def contains(self, vec):
        if len(vec) != self.ambient.rank:
            raise AmbientMismatchError("element size does not match ambient")
        return intmat.lattice_contains(list(vec), self._basis_rows())

    __contains__ = contains

    def contains_subgroup(self, other):
        self._check_ambient(other)
        return all(self.contains(row) for row in other.generators)

    def _check_ambient(self, other):
        if not isinstance(other, Subgroup) or other.ambient != self.ambient:
            raise AmbientMismatchError("subgroups live in different ambients")

    def __le__(self, other):
        return other.contains_subgroup(self)

    def __eq__(self, other):
        return (isinstance(other, Subgroup)
                and self.ambient == other.ambient
                and self.generators == other.generators)

    def __hash__(self):
        return hash((self.ambient, self.generators))

    def __repr__(self):
        return "Subgroup(%r, %r)" % (self.ambient,
                                     [list(r) for r in self.generators])

    def is_zero(self):
        # the canonical basis of the zero subgroup is the relation rows
        return self == Subgroup.zero(self.ambient)

    def is_full(self):
        return self == Subgroup.full(self.ambient)

    def join(self, other):
        self._check_ambient(other)
        return Subgroup(self.ambient,
                        list(self.generators) + list(other.generators))

    def meet(self, other):
        self._check_ambient(other)
        b1, b2 = self._basis_rows(), other._basis_rows()
        n = self.ambient.rank
        block = [[b1[k][i] for k in range(len(b1))]
                 + [-b2[k][i] for k in range(len(b2))] for i in range(n)]
        gens = []
        for ker in intmat.kernel_columns(block, cols=len(b1) + len(b2)):
            gens.append([sum(ker[k] * b1[k][i] for k in range(len(b1)))
                         for i in range(n)])
        return Subgroup(self.ambient, gens)

    def as_group(self):
        """The subgroup as an abstract group with its inclusion.

        Returns ``(group, incl, project)``: ``incl`` is an injective
        GroupHom into the ambient group, ``project`` maps coordinates of
        a member to group coordinates (returning None on a non-member),
        and ``project(incl(x)) = x``.
        """
        if self._group_cache[0] is None:
            self._group_cache[0] = self._compute_group()
        return self._group_cache[0]

    def _compute_group(self):
        basis = self._basis_rows()
        k = len(basis)
        n = self.ambient.rank
        bt = intmat.transpose(basis, n) if k else intmat.zeros(n, 0)
        rel = []
        for i, d in enumerate(self.ambient.orders):
            if not d:
                continue
            target = [d if j == i else 0 for j in range(n)]
            coords = intmat.solve_columns(bt, target, cols=k)
            if coords is None:
                raise NotSubgroupError("ambient relation escaped the lattice")
            rel.append(coords)
        group, proj, lift = _presentation(rel, gens=k)
        incl_mat = intmat.matmul(bt, lift, bcols=group.rank)
        if not incl_mat:
            incl_mat = intmat.zeros(n, group.rank)
        incl = GroupHom(group, self.ambient, incl_mat)

        def project(vec):
            coords = intmat.solve_columns(bt, list(vec), cols=k)
            if coords is None:
                return None
            return group.reduce(intmat.matvec(proj, coords)
                                if group.rank else [])

        return group, incl, project

    def size(self):
        return self.as_group()[0].size()

    def elements(self):
        """Members in the deterministic order induced by as_group()."""
        group, incl, _ = self.as_group()
        return (incl(x) for x in group.elements())

    def is_pure(self):
        """Purity via the retraction criterion.

        For finitely generated groups a subgroup is pure iff it is a
        direct summand, iff a retraction onto it exists; this turns the
        for-all-n divisibility condition into one linear solve.
        """
        group, incl, _ = self.as_group()
        if group.is_trivial():
            return True
        points = [(incl(e), e) for e in group.gens()]
        return solve_hom(self.ambient, group, point_constraints=points) is not None

    def is_pure_bruteforce(self):
        """Direct check of nG + H = nH for every n up to the exponent."""
        amb = self.ambient
        if not amb.is_finite():
            raise SizeBoundError("brute-force purity needs a finite ambient")
        for n in range(1, amb.exponent() + 1):
            ng = Subgroup(amb, [amb.scale(n, e) for e in amb.gens()])
            nh = Subgroup(amb, [[n * x for x in row] for row in self.generators])
            if ng.meet(self) != nh:
                return False
        return True


# --- kernels, images, quotients ----------------------------------------

def kernel(f):
    """Kernel of a hom as a canonical subgroup of its domain."""
    res = intmat.solve_congruences(
        f._rows(), [0] * f.codomain.rank, list(f.codomain.orders),
        f.domain.rank, list(f.domain.orders))
    return Subgroup(f.domain, res[1])


def image(f):
    """Image of a hom as a canonical subgroup of its codomain."""
    cols = [[f.matrix[i][j] for i in range(f.codomain.rank)]
            for j in range(f.domain.rank)]
    return Subgroup(f.codomain, cols)


def image_subgroup(f, sub):
    """Image of a subgroup of the domain under a hom."""
    if sub.ambient != f.domain:
        raise AmbientMismatchError("subgroup does not live in the hom domain")
    return Subgroup(f.codomain, [f(row) for row in sub.generators])


def preimage_subgroup(f, sub):
    """Full preimage of a codomain subgroup."""
    if sub.ambient != f.codomain:
        raise AmbientMismatchError("subgroup does not live in the hom codomain")
    _, proj = quotient(f.codomain, sub)
    return kernel(proj @ f)


def quotient(group, sub):
    """Quotient by a subgroup: ``(Q, projection)`` with kernel(projection) = sub."""
    if sub.ambient != group:
        raise AmbientMismatchError("subgroup of a different group")
    q, proj, _ = _presentation(sub._basis_rows(), gens=group.rank)
    return q, GroupHom(group, q, proj)


def meet(h1, h2):
    return h1.meet(h2)


def join(h1, h2):
    return h1.join(h2)


def is_pure(sub):
    return sub.is_pure()


# --- the coefficient functors ------------------------------------------

def _tensor_kept(group, n):
    """(original coordinate, new modulus) pairs surviving tensoring with Z/n."""
    kept = []
    for i, d in enumerate(group.orders):
        g = gcd(d, n) if d else n
        if g > 1:
            kept.append((i, g))
    return kept


def tensor_zmod(group, n):
    """``G (x) Z/n`` with the natural surjection from G.

    Torsion Z/d becomes Z/gcd(d, n); free coordinates become Z/n;
    coprime torsion dies.
    """
    if n < 1:
        raise ValueError("modulus must be positive")
    kept = _tensor_kept(group, n)
    tensor = FgGroup(tuple(g for _, g in kept))
    rows = [[1 if j == i else 0 for j in range(group.rank)] for i, _ in kept]
    return tensor, GroupHom(group, tensor, rows)


def induced_tensor_hom(f, n):
    """The functorial map ``f (x) id`` on tensored groups."""
    ta, _ = tensor_zmod(f.domain, n)
    tb, _ = tensor_zmod(f.codomain, n)
    kept_a = _tensor_kept(f.domain, n)
    kept_b = _tensor_kept(f.codomain, n)
    rows = [[f.matrix[i][j] for j, _ in kept_a] for i, _ in kept_b]
    return GroupHom(ta, tb, rows)


def n_torsion(group, n):
    """``G[n] = {g : ng = 0}`` as a subgroup of G."""
    if n < 1:
        raise ValueError("modulus must be positive")
    gens = []
    for i, d in enumerate(group.orders):
        if d:
            g = gcd(d, n)
            if g > 1:
                gens.append([d // g if j == i else 0
                             for j in range(group.rank)])
    return Subgroup(group, gens)


def torsion(group):
    """The full torsion subgroup (all finite-order elements)."""
    gens = [[1 if j == i else 0 for j in range(group.rank)]
            for i, d in enumerate(group.orders) if d]
    return Subgroup(group, gens)


def n_torsion_group(group, n):
    """``G[n]`` as an abstract group with its inclusion.

    Coordinates line up with the torsion coordinates of G that meet n;
    generator t includes as (d/gcd(d,n)) times the ambient generator.
    """
    if n < 1:
        raise ValueError("modulus must be positive")
    kept = [(i, gcd(d, n)) for i, d in enumerate(group.orders)
            if d and gcd(d, n) > 1]
    tors = FgGroup(tuple(g for _, g in kept))
    rows = []
    for i in range(group.rank):
        row = []
        for orig, g in kept:
            row.append(group.orders[orig] // g if orig == i else 0)
        rows.append(row)
    return tors, GroupHom(tors, group, rows)


def induced_torsion_hom(f, n):
    """The functorial restriction ``f[n] : A[n] -> B[n]``."""
    ta, incl_a = n_torsion_group(f.domain, n)
    tb, _ = n_torsion_group(f.codomain, n)
    kept_b = [(i, gcd(d, n)) for i, d in enumerate(f.codomain.orders)
              if d and gcd(d, n) > 1]
    cols = []
    gens_a = ta.gens()
    for t in range(ta.rank):
        img = f(incl_a(gens_a[t]))
        col = []
        for orig, g in kept_b:
            d = f.codomain.orders[orig]
            step = d // g
            if img[orig] % step:
                raise HomDefinitionError("image escaped the n-torsion")
            col.append((img[orig] // step) % g)
        for i, d in enumerate(f.codomain.orders):
            if (not d or gcd(d, n) == 1) and img[i]:
                raise HomDefinitionError("image escaped the n-torsion")
        cols.append(col)
    return GroupHom.from_images(ta, tb, cols)


def direct_sum(groups):
    """Direct sum with tracked injections and projections.

    Returns ``(G, injections, projections)`` with
    ``proj[k] @ inj[j] = delta_kj`` and ``sum inj[k] @ proj[k] = id``.
    The summands are renormalized into one invariant-factor form.
    """
    groups = list(groups)
    total = sum(g.rank for g in groups)
    rel = []
    offset = 0
    for g in groups:
        for i, d in enumerate(g.orders):
            if d:
                rel.append([d if j == offset + i else 0
                            for j in range(total)])
        offset += g.rank
    summed, proj, lift = _presentation(rel, gens=total)
    injections = []
    projections = []
    offset = 0
    for g in groups:
        inj_mat = [[proj[i][offset + j] for j in range(g.rank)]
                   for i in range(summed.rank)]
        proj_mat = [[lift[offset + i][t] for t in range(summed.rank)]
                    for i in range(g.rank)]
        injections.append(GroupHom(g, summed, inj_mat))
        projections.append(GroupHom(summed, g, proj_mat))
        offset += g.rank
    return summed, injections, projections


# --- hom solving --------------------------------------------------------

def solve_hom(domain, codomain, point_constraints=(), left_constraints=(),
              variant="min"):
    """Find a hom satisfying pointwise and left-composition constraints.

    ``point_constraints`` is a list of ``(a, b)`` pairs demanding
    ``X(a) = b``.  ``left_constraints`` is a list of ``(L, R)`` pairs of
    homs demanding ``L @ X = R`` (L from the codomain, R from the
    domain, into one common target).  Returns the canonical solution
    (lexicographically least generator images) or None.
    """
    rc, rd = codomain.rank, domain.rank
    cod_orders = codomain.orders
    nvars = rc * rd

    def idx(i, j):
        # column-major: all coordinates of the image of generator 0 first
        return j * rc + i

    var_mods = [0] * nvars
    for j in range(rd):
        for i in range(rc):
            var_mods[idx(i, j)] = cod_orders[i]

    rows, rhs, mods = [], [], []

    def add_row(coeffs, b, m):
        rows.append(coeffs)
        rhs.append(b)
        mods.append(m)

    for j, d in enumerate(domain.orders):
        if not d:
            continue
        for i in range(rc):
            row = [0] * nvars
            row[idx(i, j)] = d
            add_row(row, 0, cod_orders[i])

    for a, b in point_constraints:
        a = domain.reduce(a)
        b = codomain.reduce(b)
        for i in range(rc):
            row = [0] * nvars
            for j in range(rd):
                row[idx(i, j)] = a[j]
            add_row(row, b[i], cod_orders[i])

    for lmap, rmap in left_constraints:
        if lmap.domain != codomain or rmap.domain != domain \
                or lmap.codomain != rmap.codomain:
            raise AmbientMismatchError("left constraint ends do not line up")
        w_orders = lmap.codomain.orders
        for r in range(lmap.codomain.rank):
            for j in range(rd):
                row = [0] * nvars
                for i in range(rc):
                    row[idx(i, j)] = lmap.matrix[r][i]
                add_row(row, rmap.matrix[r][j], w_orders[r])

    res = intmat.solve_congruences(rows, rhs, mods, nvars, var_mods, variant)
    if res is None:
        return None
    sol = res[0]
    matrix = [[sol[idx(i, j)] for j in range(rd)] for i in range(rc)]
    return GroupHom(domain, codomain, matrix)


def hom_preimage(f, target, variant="min"):
    """Canonical preimage of one element under a hom, or None."""
    target = f.codomain.reduce(target)
    res = intmat.solve_congruences(
        f._rows(), list(target), list(f.codomain.orders),
        f.domain.rank, list(f.domain.orders), variant)
    if res is None:
        return None
    return f.domain.reduce(res[0])


def restrict_hom(f, sub):
    """Restriction of a hom to a subgroup of its domain (as a group)."""
    if sub.ambient != f.domain:
        raise AmbientMismatchError("subgroup does not live in the hom domain")
    group, incl, _ = sub.as_group()
    return f @ incl


def extend_hom(f, sub, variant="min"):
    """Extend a hom defined on a subgroup to the whole ambient group.

    ``f`` must have the abstract group of ``sub`` as its domain (the
    first component of ``sub.as_group()``).  Returns an extension F with
    ``F @ incl = f``, the canonical one, or None when no extension
    exists.  None is an answer, not an error.
    """
    group, incl, _ = sub.as_group()
    if f.domain != group:
        raise AmbientMismatchError(
            "hom domain %r is not the subgroup's group %r" % (f.domain, group))
    points = [(incl(e), f(e)) for e in group.gens()]
    return solve_hom(sub.ambient, f.codomain, point_constraints=points,
                     variant=variant)
