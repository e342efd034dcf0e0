"""Core algorithms: Gamma complex, splitting extension, gluing, lifting.

A splitting family assigns to every ideal id a section sigma_I of the
coefficient row restricted to that ideal, with the restriction
coherence: whenever J1 <= J2, sigma_{J2} agrees with sigma_{J1} on
K1(J1)[n].  The builder walks the lattice in next_ideal order: the
bottom gets the zero section, an ideal with a unique maximal subideal
gets a constrained-solver extension, and an ideal with several maximal
subideals is glued from them along the Gamma complex, with the
well-definedness of the glue verified rather than assumed.

Everything here is deterministic: solver solutions are canonical
(lexicographically least), gluing preimages use a fixed variant, and
families built from equal inputs serialize identically.
"""

from typing import NamedTuple, Optional

from .errors import (AmbientMismatchError, GluingError,
                     HomDefinitionError, InstanceValidationError,
                     LiftHypothesisError, MissingSigmaError,
                     NotASplittingError, NotComaximalError,
                     NotSubgroupError, SplittingObstructionError)
from .fgab import (GroupHom, Subgroup, direct_sum, hom_preimage, image,
                   image_subgroup, induced_tensor_hom, induced_torsion_hom,
                   solve_hom)
from .kunneth import CheckResult, ValidationReport, validate_instance
from .sequences import ShortExact, enumerate_splittings


class SplittingFamily:
    """Per-ideal sections sigma_I : K1(I)[n] -> Kn, keyed by ideal id.

    ``notes`` carries strategy remarks from the builder (never needed
    for verification and not serialized).
    """

    __slots__ = ("sigmas", "notes")

    def __init__(self, sigmas, notes=()):
        object.__setattr__(self, "sigmas", dict(sigmas))
        object.__setattr__(self, "notes", tuple(notes))

    def __setattr__(self, name, value):
        raise AttributeError("SplittingFamily is immutable")

    def ids(self):
        return sorted(self.sigmas)

    def sigma(self, id):
        if id not in self.sigmas:
            raise MissingSigmaError("no sigma for ideal %r" % (id,))
        return self.sigmas[id]

    def __eq__(self, other):
        return (isinstance(other, SplittingFamily)
                and self.sigmas == other.sigmas)

    def __hash__(self):
        return hash(tuple(sorted(self.sigmas.items())))

    def __repr__(self):
        return "SplittingFamily(%s)" % ", ".join(self.ids())


class ComplexIso:
    """Invertible triple commuting with both rows, plus the ideal pairing."""

    __slots__ = ("phi0", "phi", "phi1", "pairing")

    def __init__(self, phi0, phi, phi1, pairing):
        object.__setattr__(self, "phi0", phi0)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "phi1", phi1)
        object.__setattr__(self, "pairing", dict(pairing))

    def __setattr__(self, name, value):
        raise AttributeError("ComplexIso is immutable")

    def __repr__(self):
        return "ComplexIso(%d ideals)" % len(self.pairing)


class GammaResult(NamedTuple):
    ok: bool
    witness: Optional[str]


# --- the Gamma complex -----------------------------------------------------

def _common_ambient(parts):
    if not parts:
        raise AmbientMismatchError("need at least one part")
    ambient = parts[0].ambient
    for p in parts[1:]:
        if p.ambient != ambient:
            raise AmbientMismatchError("parts live in different groups")
    return ambient


def _gamma_setup(parts):
    abstr = [p.as_group() for p in parts]
    d0, inj, proj = direct_sum([g for g, _, _ in abstr])
    return abstr, d0, inj, proj


def _coords_hom(src_group, src_incl, dst):
    """Members of one subgroup in the coordinates of a containing one.

    ``dst`` is an as_group() triple.  Raises NotSubgroupError when some
    generator is not actually a member of the destination.
    """
    dst_group, _, project = dst
    images = []
    for gen in src_group.gens():
        coords = project(src_incl(gen))
        if coords is None:
            raise NotSubgroupError(
                "element %r is outside the destination subgroup"
                % (tuple(src_incl(gen)),))
        images.append(coords)
    return GroupHom.from_images(src_group, dst_group, images)


def gamma0(parts):
    """Gamma0 : (+)_i G_i -> H, summing the coordinate inclusions."""
    ambient = _common_ambient(parts)
    abstr, d0, inj, proj = _gamma_setup(parts)
    total = GroupHom.zero(d0, ambient)
    for (g, incl, _), pr in zip(abstr, proj):
        total = total + (incl @ pr)
    return total


def _gamma1_with_pairs(parts, pair_subs):
    """Gamma1 with injectable pair data: pair_subs[(i, j)] is the
    subgroup standing in for G_i meet G_j."""
    _common_ambient(parts)
    abstr, d0, inj, proj = _gamma_setup(parts)
    pair_list = []
    maps = []
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            m = pair_subs[(i, j)]
            mg, mincl, _ = m.as_group()
            pair_list.append(mg)
            # place at slot i, minus the same element at slot j
            into_i = _coords_hom(mg, mincl, abstr[i])
            into_j = _coords_hom(mg, mincl, abstr[j])
            maps.append((inj[i] @ into_i) - (inj[j] @ into_j))
    d1, pinj, pproj = direct_sum(pair_list)
    total = GroupHom.zero(d1, d0)
    for f, pr in zip(maps, pproj):
        total = total + (f @ pr)
    return total


def gamma1(parts):
    """Gamma1 : (+)_{i<j} (G_i meet G_j) -> (+)_i G_i."""
    pair_subs = {}
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            pair_subs[(i, j)] = parts[i].meet(parts[j])
    return _gamma1_with_pairs(parts, pair_subs)


def check_gamma_exact(inst, I, parts):
    """Exactness certificate for the coefficient-level Gamma complex.

    Uses the instance's STORED data at the pairwise lattice meets, so a
    planted lattice-law defect surfaces here as a kernel witness rather
    than being silently repaired by recomputing true intersections.
    """
    parts = list(parts)
    if not inst.order.is_comaximal_family(I, parts):
        raise NotComaximalError("parts %r are not comaximal under %r"
                                % (parts, I))
    subs = [inst.torsion_sub(p) for p in parts]
    target = inst.torsion_sub(I)
    g0 = gamma0(subs)
    pair_subs = {}
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            mid = inst.order.meet(parts[i], parts[j])
            if mid is None:
                return GammaResult(False, "no lattice meet of %s and %s"
                                   % (parts[i], parts[j]))
            pair_subs[(i, j)] = inst.torsion_sub(mid)
    try:
        g1 = _gamma1_with_pairs(subs, pair_subs)
    except (NotSubgroupError, HomDefinitionError) as exc:
        return GammaResult(False, "meet data does not embed in the parts: %s"
                           % (exc,))
    im0 = image(g0)
    for g in target.generators:
        if not im0.contains(g):
            return GammaResult(False, "Gamma0 misses %r of K1(%s)[n]"
                               % (tuple(target.ambient.reduce(g)), I))
    for g in im0.generators:
        if not target.contains(g):
            return GammaResult(False, "Gamma0 image escapes K1(%s)[n] at %r"
                               % (I, tuple(target.ambient.reduce(g))))
    ker = g0.kernel()
    im1 = image(g1)
    for g in ker.generators:
        if not im1.contains(g):
            return GammaResult(
                False, "%r lies in ker Gamma0 but not in im Gamma1"
                % (tuple(ker.ambient.reduce(g)),))
    for g in im1.generators:
        if not ker.contains(g):
            return GammaResult(
                False, "%r lies in im Gamma1 but not in ker Gamma0"
                % (tuple(im1.ambient.reduce(g)),))
    return GammaResult(True, None)


# --- splittings ------------------------------------------------------------

def _tor_group(inst, id):
    """(abstract K1(id)[n], inclusion into K1[n], retraction)."""
    return inst.torsion_sub(id).as_group()


def restriction_hom(inst, lo, hi):
    """Coordinates of K1(lo)[n] inside K1(hi)[n] (lo <= hi)."""
    g_lo, incl_lo, _ = _tor_group(inst, lo)
    return _coords_hom(g_lo, incl_lo, _tor_group(inst, hi))


def _check_is_splitting(inst, id, sig):
    """NotASplittingError unless sig is a section for ideal id's row."""
    g, incl, _ = _tor_group(inst, id)
    if sig.domain != g or sig.codomain != inst.coeff.Kn:
        raise NotASplittingError(
            "sigma for %r has the wrong domain or codomain" % (id,))
    if inst.coeff.beta_tilde @ sig != incl:
        raise NotASplittingError(
            "beta_tilde . sigma is not the identity on K1(%s)[n]" % (id,))
    if not image(sig) <= inst.node(id).Kn_sub:
        raise NotASplittingError(
            "sigma image escapes Kn(%s)" % (id,))


def _extend_solver(inst, lo, hi, tau, variant="min"):
    """Canonical extension of tau (a section at lo) to hi, or None."""
    g_lo, incl_lo, _ = _tor_group(inst, lo)
    g_hi, incl_hi, _ = _tor_group(inst, hi)
    h_hi, incl_h, proj_h = inst.node(hi).Kn_sub.as_group()
    iota = restriction_hom(inst, lo, hi)
    points = []
    for gen in g_lo.gens():
        target = proj_h(tau(gen))
        if target is None:
            # tau's image is not inside Kn(hi): nothing can extend it
            return None
        points.append((iota(gen), target))
    x = solve_hom(g_hi, h_hi,
                  point_constraints=points,
                  left_constraints=[(inst.coeff.beta_tilde @ incl_h,
                                     incl_hi)],
                  variant=variant)
    if x is None:
        return None
    return incl_h @ x


def _extend_greedy(inst, lo, hi, tau):
    """Complement-growing strategy: grow D maximal with D meet im rho = 0
    and im tau <= D; succeed iff Kn(hi) = rho-image (+) D.  Incomplete at
    a fixed coefficient; used as a cross-check."""
    kn_sub = inst.node(hi).Kn_sub
    rho_im = inst.rho_image(hi)
    d = image(tau)
    if not d.meet(rho_im).is_zero():
        return None
    if kn_sub.size() is None:
        return None
    for x in kn_sub.elements():
        cand = d.join(Subgroup(kn_sub.ambient, [list(x)]))
        if cand.meet(rho_im).is_zero():
            d = cand
    if d.join(rho_im) != kn_sub:
        return None
    # project Kn(hi) onto D along the rho image, after any section
    g_hi, incl_hi, _ = _tor_group(inst, hi)
    h_hi, incl_h, proj_h = kn_sub.as_group()
    s = solve_hom(g_hi, h_hi,
                  left_constraints=[(inst.coeff.beta_tilde @ incl_h,
                                     incl_hi)])
    if s is None:
        return None
    points = []
    for g in rho_im.generators:
        coords = proj_h(g)
        if coords is None:
            return None
        points.append((coords, [0] * kn_sub.ambient.rank))
    for g in d.generators:
        points.append((proj_h(g), list(kn_sub.ambient.reduce(g))))
    pi_d = solve_hom(h_hi, kn_sub.ambient, point_constraints=points)
    if pi_d is None:
        return None
    sigma = pi_d @ s
    try:
        _check_is_splitting(inst, hi, sigma)
    except NotASplittingError:
        return None
    iota = restriction_hom(inst, lo, hi)
    g_lo = _tor_group(inst, lo)[0]
    for gen in g_lo.gens():
        if sigma(iota(gen)) != tau(gen):
            return None
    return sigma


def extend_splitting(inst, I, tau, strategy="solver", variant="min"):
    """Extend a section at ideal I to the top row; None if impossible."""
    top = inst.order.top()
    _check_is_splitting(inst, I, tau)
    return _extend_any(inst, I, top, tau, strategy, variant)[0]


def _extend_any(inst, lo, hi, tau, strategy, variant):
    """Dispatch on strategy; returns (sigma or None, notes)."""
    notes = []
    if strategy == "solver":
        return _extend_solver(inst, lo, hi, tau, variant), notes
    if strategy == "greedy":
        return _extend_greedy(inst, lo, hi, tau), notes
    if strategy == "both":
        got = _extend_solver(inst, lo, hi, tau, variant)
        alt = _extend_greedy(inst, lo, hi, tau)
        if got is None and alt is not None:
            raise SplittingObstructionError(
                "internal inconsistency at %r: greedy found an extension "
                "the complete solver missed" % (hi,), ideal=hi)
        if got is not None and alt is None:
            notes.append("%s: greedy strategy failed, solver succeeded "
                         "(greedy is incomplete at fixed n)" % (hi,))
        elif got is not None and alt is not None:
            notes.append("%s: strategies agree on solvability (%s)"
                         % (hi, "same map" if got == alt
                            else "different valid maps"))
        return got, notes
    raise ValueError("unknown strategy %r" % (strategy,))


def glue_comaximal(inst, I, parts, sigmas, preimage_variant="min"):
    """Assemble sigma_I from sections at a comaximal family of parts.

    For each generator y of K1(I)[n] a Gamma0-preimage (y_1, ..., y_N)
    is solved and sigma_I(y) = sum sigma_i(y_i).  Coherence of the
    inputs on pairwise meets and exactness of the Gamma complex are
    verified first, which is exactly what makes the result independent
    of the preimage choice.
    """
    parts = list(parts)
    for p in parts:
        if p not in sigmas:
            raise MissingSigmaError("no sigma for part %r" % (p,))
        _check_is_splitting(inst, p, sigmas[p])
    cert = check_gamma_exact(inst, I, parts)
    if not cert.ok:
        raise GluingError("Gamma complex is not exact under %r: %s"
                          % (I, cert.witness))
    # Eq (4) among the parts at their pairwise lattice meets
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            mid = inst.order.meet(parts[i], parts[j])
            ri = restriction_hom(inst, mid, parts[i])
            rj = restriction_hom(inst, mid, parts[j])
            if sigmas[parts[i]] @ ri != sigmas[parts[j]] @ rj:
                raise GluingError(
                    "sigmas at %r and %r disagree on their meet %r"
                    % (parts[i], parts[j], mid))
    subs = [inst.torsion_sub(p) for p in parts]
    abstr, d0, inj, proj = _gamma_setup(subs)
    g0 = gamma0(subs)
    g_i, incl_i, _ = _tor_group(inst, I)
    images = []
    for gen in g_i.gens():
        w = hom_preimage(g0, incl_i(gen), variant=preimage_variant)
        if w is None:
            raise GluingError("no Gamma0 preimage for %r" % (gen,))
        total = inst.coeff.Kn.zero()
        for k, p in enumerate(parts):
            yk = proj[k](w)
            total = inst.coeff.Kn.add(total, sigmas[p](yk))
        images.append(total)
    try:
        sigma = GroupHom.from_images(g_i, inst.coeff.Kn, images)
    except Exception as exc:
        raise GluingError("glued images do not define a hom: %s" % (exc,))
    # the construction guarantees these for valid input; certify anyway
    try:
        _check_is_splitting(inst, I, sigma)
    except NotASplittingError as exc:
        raise GluingError("glued map is not a section at %r: %s" % (I, exc))
    return sigma


def build_ideal_splitting(inst, strategy="solver", variant="min",
                          validate=True):
    """Inductive construction of a coherent splitting family.

    Walks the lattice in next_ideal order; zero section at the bottom,
    solver extension when an ideal has one maximal subideal, comaximal
    gluing when it has several.  Raises SplittingObstructionError with
    the blocking ideal when an extension does not exist.  ``validate``
    can be switched off by callers that already ran validate_instance
    (or insist on attempting an invalid instance).
    """
    if validate:
        report = validate_instance(inst)
        if not report.ok:
            raise InstanceValidationError(
                "instance fails validation: %s"
                % ", ".join(r.name for r in report.failures()),
                report=report)
    sigmas = {}
    notes = []
    processed = set()
    while True:
        current = inst.order.next_ideal(processed)
        if current is None:
            break
        maxsubs = inst.order.maximal_subideals(current)
        if not maxsubs:
            g, _, _ = _tor_group(inst, current)
            sigmas[current] = GroupHom.zero(g, inst.coeff.Kn)
        elif len(maxsubs) == 1:
            lo = maxsubs[0]
            sigma, extra = _extend_any(inst, lo, current, sigmas[lo],
                                       strategy, variant)
            notes.extend(extra)
            if sigma is None:
                raise SplittingObstructionError(
                    "no extension of the section at %r to %r"
                    % (lo, current), ideal=current,
                    diagnostics={"from": lo, "strategy": strategy})
            sigmas[current] = sigma
        else:
            sigmas[current] = glue_comaximal(inst, current, maxsubs, sigmas,
                                             preimage_variant=variant)
        processed.add(current)
    return SplittingFamily(sigmas, notes)


def verify_ideal_splitting(inst, fam):
    """Re-check a family against its instance, however it was produced."""
    results = []

    def run(name, fn):
        try:
            ok, witness = fn()
        except Exception as exc:
            ok, witness = False, "%s: %s" % (type(exc).__name__, exc)
        results.append(CheckResult(name, bool(ok), None if ok else witness))

    ids = list(inst.order.nodes)
    for i in ids:
        def domain_ok(i=i):
            sig = fam.sigma(i)
            g, _, _ = _tor_group(inst, i)
            if sig.domain != g:
                return False, "domain is not K1(%s)[n]" % (i,)
            if sig.codomain != inst.coeff.Kn:
                return False, "codomain is not Kn"
            return True, None
        run("family-domain:%s" % i, domain_ok)
    for i in ids:
        def splits(i=i):
            sig = fam.sigma(i)
            _, incl, _ = _tor_group(inst, i)
            if inst.coeff.beta_tilde @ sig != incl:
                return False, ("beta_tilde . sigma != id on K1(%s)[n]"
                               % (i,))
            return True, None
        run("splitting-identity:%s" % i, splits)
    for i in ids:
        def contained(i=i):
            im = image(fam.sigma(i))
            if not im <= inst.node(i).Kn_sub:
                for g in im.generators:
                    if not inst.node(i).Kn_sub.contains(g):
                        return False, ("sigma image reaches %r outside Kn(%s)"
                                       % (tuple(im.ambient.reduce(g)), i))
            return True, None
        run("containment:%s" % i, contained)
    for x in range(len(ids)):
        for y in range(len(ids)):
            lo, hi = ids[x], ids[y]
            if lo == hi or not inst.order.leq(lo, hi):
                continue

            def coherent(lo=lo, hi=hi):
                iota = restriction_hom(inst, lo, hi)
                if fam.sigma(hi) @ iota != fam.sigma(lo):
                    return False, ("sigma at %s restricted to K1(%s)[n] "
                                   "differs from sigma at %s" % (hi, lo, lo))
                return True, None

            run("coherence:%s<%s" % (lo, hi), coherent)
    return ValidationReport(results)


def full_section(inst, fam):
    """The top section as a map on all of K1[n]."""
    top = inst.order.top()
    _, _, project = _tor_group(inst, top)
    t1 = inst.coeff.beta_tilde.codomain
    sig = fam.sigma(top)
    images = []
    for gen in t1.gens():
        coords = project(gen)
        if coords is None:
            raise NotSubgroupError("K1(%s)[n] is not all of K1[n]" % (top,))
        images.append(sig(coords))
    return GroupHom.from_images(t1, inst.coeff.Kn, images)


def exhaustive_ideal_splittings(inst, bound=256):
    """All ideal-respecting sections of the top row, by brute force.

    Ground truth for the builder: nonempty iff an ideally split family
    exists (any family's top section is such a map, and any such map
    restricts to a family).  Sorted by matrix, so deterministic.
    """
    seq = ShortExact.from_maps(inst.coeff.rho_tilde, inst.coeff.beta_tilde)
    keep = []
    for sec in enumerate_splittings(seq, bound=bound):
        if all(image_subgroup(sec, inst.torsion_sub(i))
               <= inst.node(i).Kn_sub for i in inst.order.nodes):
            keep.append(sec)
    return keep


# --- isomorphism lifting ---------------------------------------------------

def _check_pairing(instA, instB, phi0, phi1, pairing):
    a_ids = sorted(instA.order.nodes)
    if sorted(pairing) != a_ids:
        raise LiftHypothesisError("pairing keys are not A's ideals")
    if sorted(pairing.values()) != sorted(instB.order.nodes):
        raise LiftHypothesisError("pairing values are not B's ideals")
    for i in a_ids:
        for j in a_ids:
            if instA.order.leq(i, j) != instB.order.leq(pairing[i],
                                                        pairing[j]):
                raise LiftHypothesisError(
                    "pairing does not preserve order at (%s, %s)" % (i, j))
    for i in a_ids:
        na, nb = instA.node(i), instB.node(pairing[i])
        if image_subgroup(phi0, na.K0_sub) != nb.K0_sub:
            raise LiftHypothesisError(
                "phi0 K0(%s) differs from K0(%s)" % (i, pairing[i]))
        if image_subgroup(phi1, na.K1_sub) != nb.K1_sub:
            raise LiftHypothesisError(
                "phi1 K1(%s) differs from K1(%s)" % (i, pairing[i]))


def _lift_map(src, dst, tensor_map, torsion_map, sigma_src, tau_dst):
    """phi(x) = rho_B(tensor_map(u)) + tau(torsion_map(beta x)) with u
    the unique rho-preimage of x - sigma(beta x)."""
    kn_a, kn_b = src.coeff.Kn, dst.coeff.Kn
    rho_a, beta_a = src.coeff.rho_tilde, src.coeff.beta_tilde
    rho_b = dst.coeff.rho_tilde
    images = []
    for gen in kn_a.gens():
        v = beta_a(gen)
        diff = kn_a.sub(gen, sigma_src(v))
        u = hom_preimage(rho_a, diff)
        if u is None:
            raise LiftHypothesisError(
                "element %r is not split by the source family" % (gen,))
        img = kn_b.add(rho_b(tensor_map(u)), tau_dst(torsion_map(v)))
        images.append(img)
    return GroupHom.from_images(kn_a, kn_b, images)


def lift_isomorphism(instA, instB, phi0, phi1, pairing):
    """Lift (phi0, phi1) to the middle map of an ideal-preserving iso.

    Both instances must be valid; phi0, phi1 must be isomorphisms
    matched by the lattice pairing.  The result commutes with both rows,
    carries Kn(I) onto Kn(pairing(I)), and its inverse (built from the
    same two splitting families) does the same in reverse.
    """
    for name, inst in (("A", instA), ("B", instB)):
        report = validate_instance(inst)
        if not report.ok:
            raise InstanceValidationError(
                "instance %s fails validation" % name, report=report)
    if instA.coeff.n != instB.coeff.n:
        raise LiftHypothesisError("coefficients differ")
    if not phi0.is_iso() or not phi1.is_iso():
        raise LiftHypothesisError("phi0 and phi1 must be isomorphisms")
    if phi0.domain != instA.data.K0 or phi0.codomain != instB.data.K0:
        raise LiftHypothesisError("phi0 must map K0(A) to K0(B)")
    if phi1.domain != instA.data.K1 or phi1.codomain != instB.data.K1:
        raise LiftHypothesisError("phi1 must map K1(A) to K1(B)")
    _check_pairing(instA, instB, phi0, phi1, pairing)
    n = instA.coeff.n
    fam_a = build_ideal_splitting(instA)
    fam_b = build_ideal_splitting(instB)
    sigma = full_section(instA, fam_a)
    tau = full_section(instB, fam_b)
    fwd_tensor = induced_tensor_hom(phi0, n)
    fwd_torsion = induced_torsion_hom(phi1, n)
    phi = _lift_map(instA, instB, fwd_tensor, fwd_torsion, sigma, tau)
    inv = _lift_map(instB, instA, induced_tensor_hom(phi0.inverse(), n),
                    induced_torsion_hom(phi1.inverse(), n), tau, sigma)
    checks = [
        (phi @ instA.coeff.rho_tilde == instB.coeff.rho_tilde @ fwd_tensor,
         "phi does not commute with rho_tilde"),
        (instB.coeff.beta_tilde @ phi == fwd_torsion @ instA.coeff.beta_tilde,
         "phi does not commute with beta_tilde"),
        (inv @ phi == GroupHom.identity(instA.coeff.Kn),
         "inverse . phi is not the identity"),
        (phi @ inv == GroupHom.identity(instB.coeff.Kn),
         "phi . inverse is not the identity"),
    ]
    for i in sorted(instA.order.nodes):
        checks.append(
            (image_subgroup(phi, instA.node(i).Kn_sub)
             == instB.node(pairing[i]).Kn_sub,
             "phi Kn(%s) differs from Kn(%s)" % (i, pairing[i])))
        checks.append(
            (image_subgroup(inv, instB.node(pairing[i]).Kn_sub)
             == instA.node(i).Kn_sub,
             "inverse Kn(%s) differs from Kn(%s)" % (pairing[i], i)))
    for ok, msg in checks:
        if not ok:
            raise LiftHypothesisError(msg)
    return ComplexIso(phi0, phi, phi1, pairing)
