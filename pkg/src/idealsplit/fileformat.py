"""Canonical JSON serialization for instances, families, and results.

One self-contained document per file, schema_version "1".  Serialization
is canonical (sorted keys, two-space indent, single trailing newline),
so equal objects produce identical bytes and corpora diff cleanly.
Parsing is strict: an unknown, missing, or ill-typed key raises
SchemaError instead of being ignored, and matrix shapes are declared
explicitly so dimension bugs surface at parse time.
"""

import json
import os
import tempfile

from .errors import IdealSplitError, SchemaError
from .fgab import FgGroup, GroupHom, Subgroup, n_torsion_group, tensor_zmod
from .kunneth import (CoeffGroup, CoherentFamily, IdealNode, KData,
                      KunnethInstance)
from .lattice import IdealLattice
from .splitter import ComplexIso, SplittingFamily

SCHEMA_VERSION = "1"


def _check_keys(obj, where, required, optional=()):
    if not isinstance(obj, dict):
        raise SchemaError("%s: expected an object" % where)
    for k in required:
        if k not in obj:
            raise SchemaError("%s: missing key %r" % (where, k))
    for k in obj:
        if k not in required and k not in optional:
            raise SchemaError("%s: unknown key %r" % (where, k))


def _int(x, where):
    if not isinstance(x, int) or isinstance(x, bool):
        raise SchemaError("%s: expected an integer, got %r" % (where, x))
    return x


def _str(x, where):
    if not isinstance(x, str):
        raise SchemaError("%s: expected a string, got %r" % (where, x))
    return x


def _list(x, where):
    if not isinstance(x, list):
        raise SchemaError("%s: expected a list" % where)
    return x


def _head(doc, where, kind):
    _str(doc.get("schema_version"), where + ".schema_version")
    if doc["schema_version"] != SCHEMA_VERSION:
        raise SchemaError("%s: unsupported schema_version %r"
                          % (where, doc["schema_version"]))
    if doc.get("kind") != kind:
        raise SchemaError("%s: expected kind %r, got %r"
                          % (where, kind, doc.get("kind")))


# --- scalars of the format ---------------------------------------------------

def group_to_json(group):
    return {"invariant_factors": list(group.invariant_factors),
            "free_rank": group.free_rank}


def group_from_json(obj, where):
    _check_keys(obj, where, ("invariant_factors", "free_rank"))
    factors = [_int(d, where + ".invariant_factors")
               for d in _list(obj["invariant_factors"],
                              where + ".invariant_factors")]
    rank = _int(obj["free_rank"], where + ".free_rank")
    try:
        return FgGroup(tuple(factors), rank)
    except (IdealSplitError, ValueError, TypeError) as exc:
        raise SchemaError("%s: %s" % (where, exc))


def matrix_to_json(hom):
    return {"rows": hom.codomain.rank, "cols": hom.domain.rank,
            "entries": [list(row) for row in hom.matrix]}


def _entries_from_json(obj, where):
    _check_keys(obj, where, ("rows", "cols", "entries"))
    rows = _int(obj["rows"], where + ".rows")
    cols = _int(obj["cols"], where + ".cols")
    entries = _list(obj["entries"], where + ".entries")
    if len(entries) != rows:
        raise SchemaError("%s: declared %d rows, found %d"
                          % (where, rows, len(entries)))
    out = []
    for i, row in enumerate(entries):
        row = _list(row, "%s.entries[%d]" % (where, i))
        if len(row) != cols:
            raise SchemaError("%s: row %d has %d entries, declared cols %d"
                              % (where, i, len(row), cols))
        out.append([_int(x, "%s.entries[%d]" % (where, i)) for x in row])
    return rows, cols, out


def hom_from_json(obj, domain, codomain, where):
    rows, cols, entries = _entries_from_json(obj, where)
    if rows != codomain.rank or cols != domain.rank:
        raise SchemaError(
            "%s: shape %dx%d does not fit a map of rank %d into rank %d"
            % (where, rows, cols, domain.rank, codomain.rank))
    try:
        return GroupHom(domain, codomain, entries)
    except (IdealSplitError, ValueError, TypeError) as exc:
        raise SchemaError("%s: %s" % (where, exc))


def _vectors_from_json(obj, ambient, where):
    vecs = []
    for i, vec in enumerate(_list(obj, where)):
        vec = _list(vec, "%s[%d]" % (where, i))
        if len(vec) != ambient.rank:
            raise SchemaError("%s[%d]: vector length %d, ambient rank %d"
                              % (where, i, len(vec), ambient.rank))
        vecs.append([_int(x, "%s[%d]" % (where, i)) for x in vec])
    return vecs


def _subgroup_from_json(obj, ambient, where):
    try:
        return Subgroup(ambient, _vectors_from_json(obj, ambient, where))
    except (IdealSplitError, ValueError, TypeError) as exc:
        raise SchemaError("%s: %s" % (where, exc))


# --- instances ---------------------------------------------------------------

def instance_to_json(inst, family=None):
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "instance",
        "n": inst.coeff.n,
        "groups": {"K0": group_to_json(inst.data.K0),
                   "K1": group_to_json(inst.data.K1),
                   "Kn": group_to_json(inst.coeff.Kn)},
        "maps": {"rho_tilde": matrix_to_json(inst.coeff.rho_tilde),
                 "beta_tilde": matrix_to_json(inst.coeff.beta_tilde)},
        "lattice": {"nodes": list(inst.order.nodes),
                    "edges": sorted([a, b] for a, b in
                                    inst.order.cover_edges())},
        "ideals": {i: {"K0": [list(v) for v in inst.node(i).K0_sub.generators],
                       "K1": [list(v) for v in inst.node(i).K1_sub.generators],
                       "Kn": [list(v) for v in inst.node(i).Kn_sub.generators]}
                   for i in inst.order.nodes},
    }
    if family is not None:
        doc["coherent_family"] = family_to_json(family)
    return doc


def instance_from_json(doc):
    """Parse an instance document.

    Returns ``(instance, family_or_None)``.  Structural problems raise
    SchemaError; semantic validity stays validate_instance's business.
    """
    where = "instance"
    _check_keys(doc, where, ("schema_version", "kind", "n", "groups",
                             "maps", "lattice", "ideals"),
                optional=("coherent_family",))
    _head(doc, where, "instance")
    n = _int(doc["n"], where + ".n")
    _check_keys(doc["groups"], where + ".groups", ("K0", "K1", "Kn"))
    K0 = group_from_json(doc["groups"]["K0"], where + ".groups.K0")
    K1 = group_from_json(doc["groups"]["K1"], where + ".groups.K1")
    Kn = group_from_json(doc["groups"]["Kn"], where + ".groups.Kn")
    try:
        T, _ = tensor_zmod(K0, n)
        T1, _ = n_torsion_group(K1, n)
    except (IdealSplitError, ValueError) as exc:
        raise SchemaError("%s.n: %s" % (where, exc))
    _check_keys(doc["maps"], where + ".maps", ("rho_tilde", "beta_tilde"))
    rho = hom_from_json(doc["maps"]["rho_tilde"], T, Kn,
                        where + ".maps.rho_tilde")
    beta = hom_from_json(doc["maps"]["beta_tilde"], Kn, T1,
                         where + ".maps.beta_tilde")
    try:
        coeff = CoeffGroup(n, Kn, rho, beta)
    except (IdealSplitError, ValueError, TypeError) as exc:
        raise SchemaError("%s: %s" % (where, exc))

    _check_keys(doc["lattice"], where + ".lattice", ("nodes", "edges"))
    ids = [_str(x, where + ".lattice.nodes")
           for x in _list(doc["lattice"]["nodes"], where + ".lattice.nodes")]
    edges = []
    for i, e in enumerate(_list(doc["lattice"]["edges"],
                                where + ".lattice.edges")):
        e = _list(e, "%s.lattice.edges[%d]" % (where, i))
        if len(e) != 2:
            raise SchemaError("%s.lattice.edges[%d]: expected a pair"
                              % (where, i))
        a, b = (_str(x, "%s.lattice.edges[%d]" % (where, i)) for x in e)
        if a not in ids or b not in ids:
            raise SchemaError("%s.lattice.edges[%d]: unknown node in %r"
                              % (where, i, (a, b)))
        edges.append((a, b))
    try:
        order = IdealLattice(ids, edges)
    except (IdealSplitError, ValueError) as exc:
        raise SchemaError("%s.lattice: %s" % (where, exc))

    ideals = doc["ideals"]
    _check_keys(ideals, where + ".ideals", tuple(order.nodes))
    nodes = []
    for i in order.nodes:
        rec = ideals[i]
        w = "%s.ideals.%s" % (where, i)
        _check_keys(rec, w, ("K0", "K1", "Kn"))
        nodes.append(IdealNode(
            i, _subgroup_from_json(rec["K0"], K0, w + ".K0"),
            _subgroup_from_json(rec["K1"], K1, w + ".K1"),
            _subgroup_from_json(rec["Kn"], Kn, w + ".Kn")))
    try:
        inst = KunnethInstance(KData(K0, K1), coeff, nodes, order)
    except (IdealSplitError, ValueError, TypeError) as exc:
        raise SchemaError("%s: %s" % (where, exc))
    family = None
    if "coherent_family" in doc:
        family = family_from_json(doc["coherent_family"], inst.data,
                                  where + ".coherent_family")
    return inst, family


# --- coherent families -------------------------------------------------------

def family_to_json(fam):
    doc = {
        "coefficients": list(fam.coefficients),
        "coeff_groups": {
            str(n): {"Kn": group_to_json(cg.Kn),
                     "rho_tilde": matrix_to_json(cg.rho_tilde),
                     "beta_tilde": matrix_to_json(cg.beta_tilde)}
            for n, cg in fam.coeffs.items()},
        "kappa": {"%d,%d" % key: matrix_to_json(f)
                  for key, f in fam.kappa.items()},
    }
    if fam.lam:
        doc["lambda"] = {"%d,%d" % key: matrix_to_json(f)
                         for key, f in fam.lam.items()}
    if fam.sigmas is not None:
        doc["sigmas"] = {str(n): matrix_to_json(f)
                         for n, f in fam.sigmas.items()}
    return doc


def _coeff_key(text, ns, where):
    try:
        n = int(text)
    except ValueError:
        raise SchemaError("%s: bad coefficient key %r" % (where, text))
    if n not in ns:
        raise SchemaError("%s: coefficient %d not in the family" % (where, n))
    return n


def _pair_key(text, ns, where):
    parts = text.split(",")
    if len(parts) != 2:
        raise SchemaError("%s: bad pair key %r" % (where, text))
    return tuple(_coeff_key(p, ns, where) for p in parts)


def family_from_json(obj, data, where="coherent_family"):
    _check_keys(obj, where, ("coefficients", "coeff_groups", "kappa"),
                optional=("lambda", "sigmas"))
    ns = [_int(x, where + ".coefficients")
          for x in _list(obj["coefficients"], where + ".coefficients")]
    groups = obj["coeff_groups"]
    _check_keys(groups, where + ".coeff_groups",
                tuple(str(n) for n in sorted(ns)))
    coeffs, models = {}, {}
    for n in ns:
        rec = groups[str(n)]
        w = "%s.coeff_groups.%s" % (where, n)
        _check_keys(rec, w, ("Kn", "rho_tilde", "beta_tilde"))
        Kn = group_from_json(rec["Kn"], w + ".Kn")
        try:
            T, _ = tensor_zmod(data.K0, n)
            T1, _ = n_torsion_group(data.K1, n)
        except (IdealSplitError, ValueError) as exc:
            raise SchemaError("%s: %s" % (w, exc))
        models[n] = (T, T1, Kn)
        rho = hom_from_json(rec["rho_tilde"], T, Kn, w + ".rho_tilde")
        beta = hom_from_json(rec["beta_tilde"], Kn, T1, w + ".beta_tilde")
        try:
            coeffs[n] = CoeffGroup(n, Kn, rho, beta)
        except (IdealSplitError, ValueError, TypeError) as exc:
            raise SchemaError("%s: %s" % (w, exc))
    kappa = {}
    for key, rec in obj["kappa"].items():
        m, n = _pair_key(key, ns, where + ".kappa")
        kappa[(m, n)] = hom_from_json(rec, models[n][2], models[m][2],
                                      "%s.kappa.%s" % (where, key))
    lam = {}
    for key, rec in obj.get("lambda", {}).items():
        m, n = _pair_key(key, ns, where + ".lambda")
        lam[(m, n)] = hom_from_json(rec, models[n][1], models[m][1],
                                    "%s.lambda.%s" % (where, key))
    sigmas = None
    if "sigmas" in obj:
        sigmas = {}
        for key, rec in obj["sigmas"].items():
            n = _coeff_key(key, ns, where + ".sigmas")
            sigmas[n] = hom_from_json(rec, models[n][1], models[n][2],
                                      "%s.sigmas.%s" % (where, key))
    try:
        return CoherentFamily(data, coeffs, kappa, lam, sigmas)
    except (IdealSplitError, ValueError, TypeError) as exc:
        raise SchemaError("%s: %s" % (where, exc))


# --- splitting families and isomorphisms -------------------------------------

def splitting_to_json(fam):
    return {"schema_version": SCHEMA_VERSION, "kind": "splitting",
            "sigmas": {i: matrix_to_json(fam.sigma(i)) for i in fam.ids()}}


def splitting_from_json(doc, inst):
    where = "splitting"
    _check_keys(doc, where, ("schema_version", "kind", "sigmas"))
    _head(doc, where, "splitting")
    _check_keys(doc["sigmas"], where + ".sigmas", tuple(inst.order.nodes))
    sigmas = {}
    for i in inst.order.nodes:
        dom, _, _ = inst.torsion_sub(i).as_group()
        sigmas[i] = hom_from_json(doc["sigmas"][i], dom, inst.coeff.Kn,
                                  "%s.sigmas.%s" % (where, i))
    return SplittingFamily(sigmas)


def iso_input_to_json(phi0, phi1, pairing):
    return {"schema_version": SCHEMA_VERSION, "kind": "iso-input",
            "phi0": matrix_to_json(phi0), "phi1": matrix_to_json(phi1),
            "pairing": dict(pairing)}


def _pairing_from_json(obj, inst_a, inst_b, where):
    _check_keys(obj, where, tuple(inst_a.order.nodes))
    pairing = {}
    for i in inst_a.order.nodes:
        j = _str(obj[i], "%s.%s" % (where, i))
        if j not in inst_b.order.nodes:
            raise SchemaError("%s.%s: unknown target ideal %r"
                              % (where, i, j))
        pairing[i] = j
    return pairing


def iso_input_from_json(doc, inst_a, inst_b):
    where = "iso-input"
    _check_keys(doc, where, ("schema_version", "kind", "phi0", "phi1",
                             "pairing"))
    _head(doc, where, "iso-input")
    phi0 = hom_from_json(doc["phi0"], inst_a.data.K0, inst_b.data.K0,
                         where + ".phi0")
    phi1 = hom_from_json(doc["phi1"], inst_a.data.K1, inst_b.data.K1,
                         where + ".phi1")
    return phi0, phi1, _pairing_from_json(doc["pairing"], inst_a, inst_b,
                                          where + ".pairing")


def iso_to_json(iso):
    return {"schema_version": SCHEMA_VERSION, "kind": "complex-iso",
            "phi0": matrix_to_json(iso.phi0),
            "phi": matrix_to_json(iso.phi),
            "phi1": matrix_to_json(iso.phi1),
            "pairing": dict(iso.pairing)}


def complex_iso_from_json(doc, inst_a, inst_b):
    where = "complex-iso"
    _check_keys(doc, where, ("schema_version", "kind", "phi0", "phi",
                             "phi1", "pairing"))
    _head(doc, where, "complex-iso")
    return ComplexIso(
        hom_from_json(doc["phi0"], inst_a.data.K0, inst_b.data.K0,
                      where + ".phi0"),
        hom_from_json(doc["phi"], inst_a.coeff.Kn, inst_b.coeff.Kn,
                      where + ".phi"),
        hom_from_json(doc["phi1"], inst_a.data.K1, inst_b.data.K1,
                      where + ".phi1"),
        _pairing_from_json(doc["pairing"], inst_a, inst_b,
                           where + ".pairing"))


# --- bytes on disk -----------------------------------------------------------

def dumps_canonical(doc):
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def loads(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("not valid JSON: %s" % exc)
    if not isinstance(doc, dict):
        raise SchemaError("top level must be an object")
    return doc


def load_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())


def save_file(path, doc):
    """Canonical bytes, written atomically next to the target."""
    text = dumps_canonical(doc)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
    return text
