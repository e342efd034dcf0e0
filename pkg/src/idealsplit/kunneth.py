"""Instance model: K-data with coefficients, filtered by an ideal lattice.

An instance packages the ambient groups K0 (torsion free) and K1, a
coefficient group Kn sitting in the row

    0 -> K0 (x) Z/n --rho_tilde--> Kn --beta_tilde--> K1[n] -> 0,

and one subgroup triple per ideal id.  Constructors enforce only
structural well-formedness (ranks, ambients, lattice node set); every
semantic hypothesis is a named check in :func:`validate_instance`, which
never raises and reports a witness for each failure.  The fixed check
order makes reports byte-stable for identical inputs.

Multi-coefficient data lives in :class:`CoherentFamily`, whose kappa
maps are checked against the three exact scalar relations

    beta_m . kappa_{m,n} = (n/(n,m)) beta_n
    kappa_{m,n} . rho_n  = (m/(n,m)) rho_m
    kappa_{k,m} . kappa_{m,n} = (m(k,n)/((k,m)(m,n))) kappa_{k,n}

where kappa_{m,n} maps Kn to Km and (a,b) is the gcd.
"""

from fractions import Fraction
from math import gcd
from typing import NamedTuple, Optional

from .errors import (AmbientMismatchError, HomDefinitionError, LatticeError,
                     MissingMapError, MissingSigmaError)
from .fgab import (FgGroup, GroupHom, Subgroup, image, image_subgroup, kernel,
                   n_torsion_group, preimage_subgroup, tensor_zmod)
from .lattice import IdealLattice
from .sequences import Complex


class KData:
    """Ambient K0 and K1."""

    __slots__ = ("K0", "K1")

    def __init__(self, K0, K1):
        if not isinstance(K0, FgGroup) or not isinstance(K1, FgGroup):
            raise TypeError("KData fields must be FgGroup instances")
        object.__setattr__(self, "K0", K0)
        object.__setattr__(self, "K1", K1)

    def __setattr__(self, name, value):
        raise AttributeError("KData is immutable")

    def __eq__(self, other):
        return (isinstance(other, KData) and self.K0 == other.K0
                and self.K1 == other.K1)

    def __hash__(self):
        return hash((self.K0, self.K1))

    def __repr__(self):
        return "KData(%r, %r)" % (self.K0, self.K1)


class CoeffGroup:
    """Coefficient group Kn with the two maps of its row."""

    __slots__ = ("n", "Kn", "rho_tilde", "beta_tilde")

    def __init__(self, n, Kn, rho_tilde, beta_tilde):
        n = int(n)
        if n < 2:
            raise ValueError("coefficient must be an integer >= 2")
        if not isinstance(Kn, FgGroup):
            raise TypeError("Kn must be an FgGroup")
        if not isinstance(rho_tilde, GroupHom) \
                or not isinstance(beta_tilde, GroupHom):
            raise TypeError("rho_tilde and beta_tilde must be GroupHoms")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "Kn", Kn)
        object.__setattr__(self, "rho_tilde", rho_tilde)
        object.__setattr__(self, "beta_tilde", beta_tilde)

    def __setattr__(self, name, value):
        raise AttributeError("CoeffGroup is immutable")

    def __eq__(self, other):
        return (isinstance(other, CoeffGroup) and self.n == other.n
                and self.Kn == other.Kn
                and self.rho_tilde == other.rho_tilde
                and self.beta_tilde == other.beta_tilde)

    def __hash__(self):
        return hash((self.n, self.Kn, self.rho_tilde, self.beta_tilde))

    def __repr__(self):
        return "CoeffGroup(n=%d, Kn=%r)" % (self.n, self.Kn)


class IdealNode:
    """One ideal id with its subgroup triple in the ambient groups."""

    __slots__ = ("id", "K0_sub", "K1_sub", "Kn_sub")

    def __init__(self, id, K0_sub, K1_sub, Kn_sub):
        if not isinstance(id, str):
            raise TypeError("ideal id must be a string")
        for sub in (K0_sub, K1_sub, Kn_sub):
            if not isinstance(sub, Subgroup):
                raise TypeError("ideal data must be Subgroup instances")
        object.__setattr__(self, "id", id)
        object.__setattr__(self, "K0_sub", K0_sub)
        object.__setattr__(self, "K1_sub", K1_sub)
        object.__setattr__(self, "Kn_sub", Kn_sub)

    def __setattr__(self, name, value):
        raise AttributeError("IdealNode is immutable")

    def __eq__(self, other):
        return (isinstance(other, IdealNode) and self.id == other.id
                and self.K0_sub == other.K0_sub
                and self.K1_sub == other.K1_sub
                and self.Kn_sub == other.Kn_sub)

    def __hash__(self):
        return hash((self.id, self.K0_sub, self.K1_sub, self.Kn_sub))

    def __repr__(self):
        return "IdealNode(%r)" % (self.id,)


class KunnethInstance:
    """KData + CoeffGroup + one IdealNode per lattice node.

    Construction checks structure only: every subgroup lives in the
    right ambient and the node ids coincide with the lattice nodes.
    Everything semantic is validate_instance's business.
    """

    __slots__ = ("data", "coeff", "ideals", "order", "_cache")

    def __init__(self, data, coeff, ideals, order):
        if not isinstance(data, KData):
            raise TypeError("data must be a KData")
        if not isinstance(coeff, CoeffGroup):
            raise TypeError("coeff must be a CoeffGroup")
        if not isinstance(order, IdealLattice):
            raise TypeError("order must be an IdealLattice")
        nodes = {}
        for node in ideals:
            if not isinstance(node, IdealNode):
                raise TypeError("ideals must be IdealNode instances")
            if node.id in nodes:
                raise LatticeError("duplicate ideal id %r" % (node.id,))
            if node.K0_sub.ambient != data.K0:
                raise AmbientMismatchError(
                    "K0 data of %r lives in the wrong group" % (node.id,))
            if node.K1_sub.ambient != data.K1:
                raise AmbientMismatchError(
                    "K1 data of %r lives in the wrong group" % (node.id,))
            if node.Kn_sub.ambient != coeff.Kn:
                raise AmbientMismatchError(
                    "Kn data of %r lives in the wrong group" % (node.id,))
            nodes[node.id] = node
        if set(nodes) != set(order.nodes):
            raise LatticeError("ideal ids do not match the lattice nodes")
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "ideals", nodes)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("KunnethInstance is immutable")

    def __eq__(self, other):
        return (isinstance(other, KunnethInstance)
                and self.data == other.data and self.coeff == other.coeff
                and self.ideals == other.ideals and self.order == other.order)

    def __hash__(self):
        return hash((self.data, self.coeff,
                     tuple(sorted(self.ideals.items())), self.order))

    def node(self, id):
        if id not in self.ideals:
            raise LatticeError("unknown ideal id %r" % (id,))
        return self.ideals[id]

    # --- cached derived data -------------------------------------------

    def _memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def tensor(self):
        """(K0 (x) Z/n, natural surjection from K0)."""
        return self._memo("tensor",
                          lambda: tensor_zmod(self.data.K0, self.coeff.n))

    def torsion(self):
        """(K1[n] as abstract group, inclusion into K1)."""
        return self._memo("torsion",
                          lambda: n_torsion_group(self.data.K1, self.coeff.n))

    def tensor_sub(self, id):
        """Image of K0(id) inside K0 (x) Z/n."""
        def build():
            _, pi = self.tensor()
            return image_subgroup(pi, self.node(id).K0_sub)
        return self._memo(("tensor_sub", id), build)

    def rho_image(self, id):
        """rho_tilde(K0(id) (x) Z/n) as a subgroup of Kn."""
        return self._memo(("rho_image", id), lambda: image_subgroup(
            self.coeff.rho_tilde, self.tensor_sub(id)))

    def torsion_sub(self, id):
        """K1(id)[n] as a subgroup of the abstract K1[n]."""
        def build():
            _, incl = self.torsion()
            return preimage_subgroup(incl, self.node(id).K1_sub)
        return self._memo(("torsion_sub", id), build)

    def beta_image(self, id):
        """beta_tilde(Kn(id)) as a subgroup of K1[n]."""
        return self._memo(("beta_image", id), lambda: image_subgroup(
            self.coeff.beta_tilde, self.node(id).Kn_sub))

    def kernel_beta(self):
        return self._memo("kernel_beta",
                          lambda: kernel(self.coeff.beta_tilde))

    # --- modified copies ------------------------------------------------

    def with_replaced_node(self, node):
        """Same lattice, one ideal's data swapped out."""
        if node.id not in self.ideals:
            raise LatticeError("no ideal %r to replace" % (node.id,))
        ideals = [node if x.id == node.id else x
                  for x in self.ideals.values()]
        return KunnethInstance(self.data, self.coeff, ideals, self.order)

    def with_added_node(self, node, below, above):
        """New instance whose lattice gains a node covering ``below``
        and covered by ``above``."""
        if node.id in self.ideals:
            raise LatticeError("ideal %r already present" % (node.id,))
        edges = list(self.order.edges)
        edges += [(b, node.id) for b in below]
        edges += [(node.id, a) for a in above]
        order = IdealLattice(list(self.order.nodes) + [node.id], edges)
        return KunnethInstance(self.data, self.coeff,
                               list(self.ideals.values()) + [node], order)


# --- validation -----------------------------------------------------------

class CheckResult(NamedTuple):
    name: str
    passed: bool
    witness: Optional[str]


class ValidationReport:
    """Ordered list of named check results."""

    __slots__ = ("results",)

    def __init__(self, results):
        object.__setattr__(self, "results", tuple(results))

    def __setattr__(self, name, value):
        raise AttributeError("ValidationReport is immutable")

    @property
    def ok(self):
        return all(r.passed for r in self.results)

    def failures(self):
        return [r for r in self.results if not r.passed]

    def find(self, name):
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def names(self):
        return [r.name for r in self.results]

    def __iter__(self):
        return iter(self.results)

    def __len__(self):
        return len(self.results)

    def as_dict(self):
        return {"ok": self.ok,
                "checks": [{"name": r.name, "passed": r.passed,
                            "witness": r.witness} for r in self.results]}

    def __repr__(self):
        bad = len(self.failures())
        return "ValidationReport(%d checks, %d failed)" % (len(self), bad)


def _missing_from(a, b):
    """A generator of subgroup a outside subgroup b, or None."""
    for g in a.generators:
        if not b.contains(g):
            return g
    return None


def _sub_leq(a, b, label):
    w = _missing_from(a, b)
    if w is None:
        return True, None
    return False, "%s: element %r escapes" % (label, tuple(w))


def _sub_eq(a, b, label):
    w = _missing_from(a, b)
    if w is not None:
        return False, "%s: element %r only on the left" % (label, tuple(w))
    w = _missing_from(b, a)
    if w is not None:
        return False, "%s: element %r only on the right" % (label, tuple(w))
    return True, None


def validate_instance(inst):
    """Run every structural-hypothesis check, in a fixed order.

    Never raises on semantic problems: a check that cannot even be
    evaluated (for example a map with the wrong domain) fails with the
    exception text as its witness.
    """
    results = []

    def run(name, fn):
        try:
            ok, witness = fn()
        except Exception as exc:  # report, never propagate
            ok, witness = False, "%s: %s" % (type(exc).__name__, exc)
        results.append(CheckResult(name, bool(ok), None if ok else witness))

    data, coeff, order = inst.data, inst.coeff, inst.order

    def hom_validity_rho():
        tgroup, _ = inst.tensor()
        if coeff.rho_tilde.domain != tgroup:
            return False, "domain is not K0 (x) Z/%d" % coeff.n
        if coeff.rho_tilde.codomain != coeff.Kn:
            return False, "codomain is not Kn"
        return True, None

    def hom_validity_beta():
        tors, _ = inst.torsion()
        if coeff.beta_tilde.domain != coeff.Kn:
            return False, "domain is not Kn"
        if coeff.beta_tilde.codomain != tors:
            return False, "codomain is not K1[%d]" % coeff.n
        return True, None

    run("hom-validity:rho_tilde", hom_validity_rho)
    run("hom-validity:beta_tilde", hom_validity_beta)
    run("k0-torsion-free",
        lambda: (data.K0.is_torsion_free(),
                 "invariant factors %r" % (data.K0.invariant_factors,)))
    run("sequence-exact:rho-injective",
        lambda: (coeff.rho_tilde.is_injective(),
                 _kernel_witness(coeff.rho_tilde)))
    run("sequence-exact:kernel-image",
        lambda: _sub_eq(kernel(coeff.beta_tilde), image(coeff.rho_tilde),
                        "ker beta_tilde vs im rho_tilde"))
    run("sequence-exact:beta-surjective",
        lambda: (coeff.beta_tilde.is_surjective(),
                 "beta_tilde misses part of K1[%d]" % coeff.n))

    def bottom_trivial():
        b = order.bottom()
        if b is None:
            return False, "lattice has no bottom"
        node = inst.node(b)
        for tag, sub in (("K0", node.K0_sub), ("K1", node.K1_sub),
                         ("Kn", node.Kn_sub)):
            if not sub.is_zero():
                return False, "%s(%s) is nonzero" % (tag, b)
        return True, None

    def top_full():
        t = order.top()
        if t is None:
            return False, "lattice has no top"
        node = inst.node(t)
        for tag, sub in (("K0", node.K0_sub), ("K1", node.K1_sub),
                         ("Kn", node.Kn_sub)):
            if not sub.is_full():
                return False, "%s(%s) is proper" % (tag, t)
        return True, None

    run("bottom-trivial", bottom_trivial)
    run("top-full", top_full)

    ids = list(order.nodes)
    for i in ids:
        run("purity:K0:%s" % i,
            lambda i=i: (inst.node(i).K0_sub.is_pure(),
                         "K0(%s) is not a pure subgroup" % i))
        run("purity:K1:%s" % i,
            lambda i=i: (inst.node(i).K1_sub.is_pure(),
                         "K1(%s) is not a pure subgroup" % i))
    for i in ids:
        run("naturality:rho:%s" % i,
            lambda i=i: _sub_leq(inst.rho_image(i), inst.node(i).Kn_sub,
                                 "rho_tilde image of K0(%s)" % i))
        run("naturality:beta:%s" % i,
            lambda i=i: _sub_leq(inst.beta_image(i), inst.torsion_sub(i),
                                 "beta_tilde image of Kn(%s)" % i))
    for i in ids:
        run("ideal-exactness:middle:%s" % i,
            lambda i=i: _sub_eq(inst.kernel_beta().meet(inst.node(i).Kn_sub),
                                inst.rho_image(i),
                                "ker beta_tilde in Kn(%s)" % i))
        run("ideal-exactness:surjective:%s" % i,
            lambda i=i: _sub_leq(inst.torsion_sub(i), inst.beta_image(i),
                                 "K1(%s)[n] vs beta_tilde image" % i))

    for lo, hi in order.cover_edges():
        def mono(lo=lo, hi=hi):
            a, b = inst.node(lo), inst.node(hi)
            for tag, x, y in (("K0", a.K0_sub, b.K0_sub),
                              ("K1", a.K1_sub, b.K1_sub),
                              ("Kn", a.Kn_sub, b.Kn_sub)):
                ok, w = _sub_leq(x, y, "%s(%s) vs %s(%s)" % (tag, lo, tag, hi))
                if not ok:
                    return False, w
            return True, None
        run("monotonicity:%s<%s" % (lo, hi), mono)

    for x in range(len(ids)):
        for y in range(x + 1, len(ids)):
            i, j = ids[x], ids[y]

            def law_meet(i=i, j=j):
                m = order.meet(i, j)
                if m is None:
                    return False, "lattice meet of %s, %s undefined" % (i, j)
                a, b, c = inst.node(i), inst.node(j), inst.node(m)
                for tag, s1, s2, s3 in (
                        ("K0", a.K0_sub, b.K0_sub, c.K0_sub),
                        ("K1", a.K1_sub, b.K1_sub, c.K1_sub),
                        ("Kn", a.Kn_sub, b.Kn_sub, c.Kn_sub)):
                    ok, w = _sub_eq(s3, s1.meet(s2),
                                    "%s(%s ^ %s)" % (tag, i, j))
                    if not ok:
                        return False, w
                return True, None

            def law_join(i=i, j=j):
                m = order.join(i, j)
                if m is None:
                    return False, "lattice join of %s, %s undefined" % (i, j)
                a, b, c = inst.node(i), inst.node(j), inst.node(m)
                for tag, s1, s2, s3 in (
                        ("K0", a.K0_sub, b.K0_sub, c.K0_sub),
                        ("K1", a.K1_sub, b.K1_sub, c.K1_sub),
                        ("Kn", a.Kn_sub, b.Kn_sub, c.Kn_sub)):
                    ok, w = _sub_eq(s3, s1.join(s2),
                                    "%s(%s v %s)" % (tag, i, j))
                    if not ok:
                        return False, w
                return True, None

            run("lattice-laws:meet:%s,%s" % (i, j), law_meet)
            run("lattice-laws:join:%s,%s" % (i, j), law_join)

    run("lattice-shape",
        lambda: (order.is_bounded_lattice(),
                 "not a bounded lattice (missing bound or meet/join)"))
    run("lattice-distributive",
        lambda: (order.is_distributive(), _distributive_witness(order)))

    def injective():
        seen = {}
        for i in ids:
            node = inst.node(i)
            key = (node.K0_sub, node.K1_sub)
            if key in seen:
                return False, "%s and %s carry identical K-data" % (seen[key],
                                                                    i)
            seen[key] = i
        return True, None

    run("lattice-injective", injective)
    return ValidationReport(results)


def _kernel_witness(f):
    for g in kernel(f).generators:
        v = f.domain.reduce(g)
        if any(v):
            return "kernel contains %r" % (tuple(v),)
    return "kernel is trivial"


def _distributive_witness(order):
    if not order.is_bounded_lattice():
        return "not even a bounded lattice"
    for a in order.nodes:
        for b in order.nodes:
            for c in order.nodes:
                lhs = order.meet(a, order.join(b, c))
                rhs = order.join(order.meet(a, b), order.meet(a, c))
                if lhs != rhs:
                    return ("%s ^ (%s v %s) = %s but (^v^) gives %s"
                            % (a, b, c, lhs, rhs))
    return None


# --- reductions and the five-term complex ---------------------------------

def _scaled(f, s):
    return GroupHom(f.domain, f.codomain,
                    [[s * x for x in row] for row in f.matrix])


def reduction_hom(data, coeff):
    """The composite K0 -> K0 (x) Z/n -> Kn."""
    _, pi = tensor_zmod(data.K0, coeff.n)
    return coeff.rho_tilde @ pi


def mod_reduction(inst):
    """rho_n : K0 -> Kn; satisfies rho_n . (x n) = 0."""
    return reduction_hom(inst.data, inst.coeff)


def full_beta(data, coeff):
    """beta_n : Kn -> K1, the torsion inclusion after beta_tilde."""
    _, incl = n_torsion_group(data.K1, coeff.n)
    return incl @ coeff.beta_tilde


def five_term_complex(inst):
    """K0 --xn--> K0 --rho_n--> Kn --beta_n--> K1 --xn--> K1."""
    data, coeff = inst.data, inst.coeff
    times_n0 = _scaled(GroupHom.identity(data.K0), coeff.n)
    times_n1 = _scaled(GroupHom.identity(data.K1), coeff.n)
    return Complex([data.K0, data.K0, coeff.Kn, data.K1, data.K1],
                   [times_n0, mod_reduction(inst),
                    full_beta(data, coeff), times_n1],
                   require_complex=True)


# --- multi-coefficient families -------------------------------------------

class CoherentFamily:
    """Shared KData with one CoeffGroup per coefficient plus kappa maps.

    ``kappa[(m, n)]`` maps Kn to Km and must be present for every
    ordered pair of distinct coefficients related by divisibility
    (both directions).  ``lam[(m, n)]`` maps K1[n] to K1[m] for n | m.
    ``sigmas[n]``, when given, is a candidate splitting K1[n] -> Kn.
    The coefficient list must be gcd-closed so the scalar relations
    stay inside the family.
    """

    __slots__ = ("data", "coeffs", "kappa", "lam", "sigmas")

    def __init__(self, data, coeffs, kappa, lam=None, sigmas=None):
        if not isinstance(data, KData):
            raise TypeError("data must be a KData")
        coeffs = dict(coeffs)
        for n, cg in coeffs.items():
            if not isinstance(cg, CoeffGroup) or cg.n != n:
                raise ValueError("coefficient key %r does not match" % (n,))
            tgroup, _ = tensor_zmod(data.K0, n)
            tors, _ = n_torsion_group(data.K1, n)
            if cg.rho_tilde.domain != tgroup \
                    or cg.rho_tilde.codomain != cg.Kn:
                raise HomDefinitionError("rho_tilde at %d has wrong shape" % n)
            if cg.beta_tilde.domain != cg.Kn or cg.beta_tilde.codomain != tors:
                raise HomDefinitionError(
                    "beta_tilde at %d has wrong shape" % n)
        ns = sorted(coeffs)
        for a in ns:
            for b in ns:
                if gcd(a, b) not in coeffs:
                    raise ValueError(
                        "coefficients are not gcd-closed: missing %d"
                        % gcd(a, b))
        kappa = dict(kappa)
        for (m, n), f in kappa.items():
            if m not in coeffs or n not in coeffs:
                raise MissingMapError(
                    "kappa key (%r, %r) outside the family" % (m, n))
            if f.domain != coeffs[n].Kn or f.codomain != coeffs[m].Kn:
                raise HomDefinitionError(
                    "kappa[%d,%d] must map K%d to K%d" % (m, n, n, m))
        lam = dict(lam or {})
        for (m, n), f in lam.items():
            if m not in coeffs or n not in coeffs or m % n:
                raise MissingMapError(
                    "lambda key (%r, %r) is not an n | m pair" % (m, n))
            if f.domain != coeffs[n].beta_tilde.codomain \
                    or f.codomain != coeffs[m].beta_tilde.codomain:
                raise HomDefinitionError(
                    "lambda[%d,%d] must map K1[%d] to K1[%d]" % (m, n, n, m))
        sigmas = dict(sigmas) if sigmas is not None else None
        if sigmas:
            for n, f in sigmas.items():
                if n not in coeffs:
                    raise MissingSigmaError("sigma at %r outside family" % n)
                if f.domain != coeffs[n].beta_tilde.codomain \
                        or f.codomain != coeffs[n].Kn:
                    raise HomDefinitionError(
                        "sigma at %d must map K1[%d] to K%d" % (n, n, n))
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "kappa", kappa)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "sigmas", sigmas)

    def __setattr__(self, name, value):
        raise AttributeError("CoherentFamily is immutable")

    @property
    def coefficients(self):
        return tuple(sorted(self.coeffs))

    def kappa_at(self, m, n):
        if (m, n) not in self.kappa:
            raise MissingMapError("kappa[%d,%d] is missing" % (m, n))
        return self.kappa[(m, n)]


def _divisor_pairs(ns):
    """Ordered pairs (m, n), m != n, with n | m or m | n."""
    out = []
    for m in ns:
        for n in ns:
            if m != n and (m % n == 0 or n % m == 0):
                out.append((m, n))
    return sorted(out)


def check_coherence(fam):
    """Verify the three scalar relations as exact matrix identities.

    A missing required kappa raises MissingMapError; everything else is
    reported.  Scalars are handled as exact fractions by
    cross-multiplying, so no divisibility assumption is made.
    """
    ns = fam.coefficients
    required = _divisor_pairs(ns)
    for key in required:
        if key not in fam.kappa:
            raise MissingMapError("kappa[%d,%d] is missing" % key)
    results = []

    def run(name, fn):
        try:
            ok, witness = fn()
        except Exception as exc:
            ok, witness = False, "%s: %s" % (type(exc).__name__, exc)
        results.append(CheckResult(name, bool(ok), None if ok else witness))

    pairs = sorted(set(required) | set(fam.kappa))
    betas = {n: full_beta(fam.data, fam.coeffs[n]) for n in ns}
    rhos = {n: reduction_hom(fam.data, fam.coeffs[n]) for n in ns}

    for m, n in pairs:
        k = fam.kappa[(m, n)]

        def eq1(m=m, n=n, k=k):
            scalar = Fraction(n, gcd(n, m))
            lhs = _scaled(betas[m] @ k, scalar.denominator)
            rhs = _scaled(betas[n], scalar.numerator)
            if lhs != rhs:
                return False, ("beta_%d . kappa[%d,%d] != (%s) beta_%d"
                               % (m, m, n, scalar, n))
            return True, None

        def eq2(m=m, n=n, k=k):
            scalar = Fraction(m, gcd(n, m))
            lhs = _scaled(k @ rhos[n], scalar.denominator)
            rhs = _scaled(rhos[m], scalar.numerator)
            if lhs != rhs:
                return False, ("kappa[%d,%d] . rho_%d != (%s) rho_%d"
                               % (m, n, n, scalar, m))
            return True, None

        run("eq1:%d,%d" % (m, n), eq1)
        run("eq2:%d,%d" % (m, n), eq2)

    have = set(fam.kappa)
    triples = sorted((k, m, n) for k in ns for m in ns for n in ns
                     if (k, m) in have and (m, n) in have and (k, n) in have)
    for kk, m, n in triples:
        def eq3(kk=kk, m=m, n=n):
            scalar = Fraction(m * gcd(kk, n), gcd(kk, m) * gcd(m, n))
            lhs = _scaled(fam.kappa[(kk, m)] @ fam.kappa[(m, n)],
                          scalar.denominator)
            rhs = _scaled(fam.kappa[(kk, n)], scalar.numerator)
            if lhs != rhs:
                return False, ("kappa[%d,%d] . kappa[%d,%d] != (%s) "
                               "kappa[%d,%d]" % (kk, m, m, n, scalar, kk, n))
            return True, None
        run("eq3:%d,%d,%d" % (kk, m, n), eq3)

    return ValidationReport(results)


def check_family_coherence(fam):
    """True iff sigma_m . lambda_{m,n} = kappa_{m,n} . sigma_n for n | m."""
    ns = fam.coefficients
    if fam.sigmas is None:
        raise MissingSigmaError("family carries no sigmas")
    for n in ns:
        if n not in fam.sigmas:
            raise MissingSigmaError("sigma at %d is missing" % n)
    for m in ns:
        for n in ns:
            if m == n or m % n:
                continue
            if (m, n) not in fam.lam:
                raise MissingMapError("lambda[%d,%d] is missing" % (m, n))
            lhs = fam.sigmas[m] @ fam.lam[(m, n)]
            rhs = fam.kappa_at(m, n) @ fam.sigmas[n]
            if lhs != rhs:
                return False
    return True
