"""Batch JSON front end: one subcommand per operation, exact values only.

Requests are {"cmd": "<domain>.<op>", ...payload...}; responses are
{"status": "ok", "result": ...} or {"status": "error", "diagnostics": [...]}.
All numbers are serialized exactly (integers, "p/q" strings, cyclotomic
coefficient arrays); identical requests produce byte-identical responses.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import grouptheory, segre, wordposet, wreath
from .cyclotomic import cyclotomic_to_json
from .errors import QuasilangError
from .genfun import (
    FactoredRational,
    congruence_filter,
    cyclotomic_translate,
    ordered_genfun,
    quasi_ordered_genfun,
    series_from_dfa,
)
from .langkit import (
    AbelianGroup,
    Norm,
    compile_congruence,
    compile_ordered,
    compile_quasi_ordered,
    congruence_from_json,
    dfa_from_json,
    dfa_to_json,
    expr_from_json,
    intersect_dfa,
    membership,
    enumerate_by_norm,
    quasi_from_json,
    quasi_to_json,
    symbol_from_json,
    symbol_to_json,
)
from .wordposet import WeightedWord, principal_ideal_language


def _norm_from_json(data, alphabet) -> Norm:
    if data is None or data == {"universal": True}:
        return Norm.universal(alphabet)
    if data == {"length": True}:
        return Norm.length(alphabet)
    mapping = {symbol_from_json(s): int(i) for s, i in data["pairs"]}
    return Norm(mapping, int(data["size"]))


def _group_from_json(data) -> grouptheory.FiniteGroup:
    construct = data.get("construct")
    if construct == "cyclic":
        return grouptheory.FiniteGroup.cyclic(int(data["n"]))
    if construct == "symmetric":
        return grouptheory.FiniteGroup.symmetric(int(data["n"]))
    if construct == "product":
        factors = [_group_from_json(f) for f in data["factors"]]
        g = factors[0]
        for f in factors[1:]:
            g = grouptheory.FiniteGroup.direct_product(g, f)
        return g
    return grouptheory.FiniteGroup.from_json(data)


def _table_to_json(t: grouptheory.CharacterTable) -> dict:
    return {
        "order": t.order,
        "class_sizes": list(t.class_sizes),
        "identity_class": t.identity_class,
        "rows": [[cyclotomic_to_json(v) for v in row] for row in t.rows],
        "row_names": [repr(n) for n in t.row_names],
        "class_names": [repr(n) for n in t.class_names],
    }


def _word_from_json(data) -> WeightedWord:
    return WeightedWord.from_json(data)


# ---------------------------------------------------------------------------
# handlers


def _cmd_lang_compile(req):
    if "congruence" in req:
        return dfa_to_json(compile_congruence(congruence_from_json(req["congruence"])))
    alphabet = tuple(symbol_from_json(s) for s in req["alphabet"])
    dfa = compile_ordered(expr_from_json(req["expr"]), alphabet)
    return dfa_to_json(dfa)


def _cmd_lang_member(req):
    dfa = dfa_from_json(req["dfa"])
    word = tuple(symbol_from_json(s) for s in req["word"])
    return membership(dfa, word)


def _cmd_lang_enum(req):
    dfa = dfa_from_json(req["dfa"])
    norm = _norm_from_json(req.get("norm"), dfa.alphabet)
    bound = req["bound"]
    bound = tuple(bound) if isinstance(bound, list) else int(bound)
    words = enumerate_by_norm(dfa, norm, bound)
    return [[symbol_to_json(s) for s in w] for w in words]


def _cmd_lang_intersect(req):
    return dfa_to_json(intersect_dfa(dfa_from_json(req["a"]), dfa_from_json(req["b"])))


def _cmd_genfun_series(req):
    dfa = dfa_from_json(req["dfa"])
    norm = _norm_from_json(req.get("norm"), dfa.alphabet)
    bound = req.get("degree", 8)
    series = series_from_dfa(dfa, norm, tuple(bound) if isinstance(bound, list) else int(bound))
    return series.to_json()


def _cmd_genfun_closed(req):
    if "quasi" in req:
        F = quasi_ordered_genfun(quasi_from_json(req["quasi"]))
    else:
        alphabet = tuple(symbol_from_json(s) for s in req["alphabet"])
        norm = _norm_from_json(req.get("norm"), alphabet)
        F = ordered_genfun(expr_from_json(req["expr"]), alphabet, norm)
    return F.to_json()


def _cmd_genfun_translate(req):
    F = FactoredRational.from_json(req["rational"])
    out = cyclotomic_translate(F, [int(k) for k in req["exponents"]], req.get("root_order"))
    return out.to_json()


def _cmd_genfun_filter(req):
    F = FactoredRational.from_json(req["rational"])
    group = AbelianGroup(tuple(int(n) for n in req["orders"]))
    psi = [tuple(int(x) for x in v) for v in req["psi"]]
    target = [tuple(int(x) for x in t) for t in req["target"]]
    return congruence_filter(F, psi, group, target).to_json()


def _cmd_genfun_expand(req):
    F = FactoredRational.from_json(req["rational"])
    bound = req.get("degree", 8)
    series = F.expand(tuple(bound) if isinstance(bound, list) else int(bound))
    return series.to_json()


def _cmd_poset_leq(req):
    x = _word_from_json(req["x"])
    y = _word_from_json(req["y"])
    witness = wordposet.leq(x, y)
    return None if witness is None else witness.to_json()


def _cmd_poset_minimal(req):
    x = _word_from_json(req["x"])
    words = sorted(wordposet.minimal_words_over(x), key=lambda w: (w.letters, w.weights))
    return [w.to_json() for w in words]


def _cmd_poset_ideal(req):
    x = _word_from_json(req["x"])
    letters = tuple(req["letters"]) if "letters" in req else None
    q = principal_ideal_language(x, letters=letters, reduced_stars=bool(req.get("reduced_stars")))
    return quasi_to_json(q)


def _cmd_poset_series(req):
    group = AbelianGroup(tuple(int(n) for n in req["orders"]))
    weights = [tuple(int(x) for x in w) for w in req["weights"]]
    bound = int(req.get("degree", 5))
    series, closed = wordposet.fws_principal_series(weights, group, bound)
    return {
        "series": series.to_json(),
        "closed": None if closed is None else closed.to_json(),
    }


def _cmd_group_table(req):
    group = _group_from_json(req["group"])
    return _table_to_json(grouptheory.character_table(group))


def _cmd_group_restrict(req):
    G = _group_from_json(req["group"])
    H = _group_from_json(req["subgroup"])
    emb = tuple(int(x) for x in req["embedding"])
    return grouptheory.restriction_matrix(G, H, emb)


def _cmd_group_good(req):
    G = _group_from_json(req["group"])
    if req.get("young"):
        fam = [(H, emb) for _, H, emb in grouptheory.young_subgroups(G.kind[1], G)]
    else:
        fam = [
            (_group_from_json(s["group"]), tuple(int(x) for x in s["embedding"]))
            for s in req["subgroups"]
        ]
    return grouptheory.is_good_family(G, fam, covering_only=bool(req.get("covering")))


def _wreath_table(req) -> grouptheory.CharacterTable:
    return grouptheory.character_table(_group_from_json(req["group"]))


def _cmd_wreath_classes(req):
    table = _wreath_table(req)
    out = []
    for label, size in wreath.wreath_classes(table, int(req["n"])):
        out.append({"label": [list(p) for p in label], "size": size})
    return out


def _cmd_wreath_char(req):
    table = _wreath_table(req)
    lam = tuple(tuple(int(x) for x in p) for p in req["lambda"])
    chi = wreath.wreath_irreducible_character(table, lam)
    values = []
    for label, size in wreath.wreath_classes(table, wreath.label_size(lam)):
        values.append(
            {"label": [list(p) for p in label], "size": size, "value": cyclotomic_to_json(chi.values[label])}
        )
    return {"dim": chi.dim(), "values": values}


def _cmd_wreath_stability(req):
    table = _wreath_table(req)
    lam, mu, nu = (
        tuple(tuple(int(x) for x in p) for p in req[k]) for k in ("lambda", "mu", "nu")
    )
    lo, hi = req["n_range"]
    return wreath.tensor_stability_table(table, lam, mu, nu, range(int(lo), int(hi) + 1))


def _cmd_wreath_hilbert(req):
    table = _wreath_table(req)
    F = wreath.diag_induced_series(table, int(req["index"]))
    out = {"closed": F.to_json()}
    if "degree" in req:
        out["series"] = F.expand((int(req["degree"]),) * len(table.rows)).to_json()
    return out


def _cmd_segre_product(req):
    x = segre.SimplicialComplex.from_json(req["x"])
    y = segre.SimplicialComplex.from_json(req["y"])
    return segre_to_json(segre.segre_product(x, y))


def segre_to_json(c: segre.SimplicialComplex) -> dict:
    return c.to_json()


def _cmd_segre_homology(req):
    x = segre.SimplicialComplex.from_json(req["complex"])
    data = segre.homology_ranks(x, int(req.get("i_max", x.dim)))
    return {"ranks": {str(k): v for k, v in sorted(data.ranks.items())}}


def _cmd_segre_series(req):
    x = segre.SimplicialComplex.from_json(req["complex"])
    group = _group_from_json(req["group"])
    table = grouptheory.character_table(group)
    maps = []
    for perm in req["action"]:
        maps.append({segre_from_vertex(k): segre_from_vertex(v) for k, v in perm})
    action = segre.GroupAction(table, x, maps)
    budget = int(req.get("budget", segre.DEFAULT_SIMPLEX_BUDGET))
    data = segre.equivariant_hilbert_data(action, int(req["i"]), int(req.get("nmax", 2)), budget)
    return [
        [[list(content), mult] for content, mult in sorted(poly.items())] for poly in data
    ]


def segre_from_vertex(v):
    return tuple(v) if isinstance(v, list) else v


HANDLERS = {
    "lang.compile": _cmd_lang_compile,
    "lang.member": _cmd_lang_member,
    "lang.enum": _cmd_lang_enum,
    "lang.intersect": _cmd_lang_intersect,
    "genfun.series": _cmd_genfun_series,
    "genfun.closed": _cmd_genfun_closed,
    "genfun.translate": _cmd_genfun_translate,
    "genfun.filter": _cmd_genfun_filter,
    "genfun.expand": _cmd_genfun_expand,
    "poset.leq": _cmd_poset_leq,
    "poset.minimal": _cmd_poset_minimal,
    "poset.ideal": _cmd_poset_ideal,
    "poset.series": _cmd_poset_series,
    "group.table": _cmd_group_table,
    "group.restrict": _cmd_group_restrict,
    "group.good": _cmd_group_good,
    "wreath.classes": _cmd_wreath_classes,
    "wreath.char": _cmd_wreath_char,
    "wreath.stability": _cmd_wreath_stability,
    "wreath.hilbert": _cmd_wreath_hilbert,
    "segre.product": _cmd_segre_product,
    "segre.homology": _cmd_segre_homology,
    "segre.series": _cmd_segre_series,
}


def execute_request(request: dict) -> dict:
    """Dispatch a request dict; never raises for domain errors."""
    cmd = request.get("cmd")
    handler = HANDLERS.get(cmd)
    if handler is None:
        return {"status": "error", "diagnostics": [f"unknown subcommand {cmd!r}"]}
    try:
        result = handler(request)
    except QuasilangError as exc:
        return {"status": "error", "diagnostics": [f"{type(exc).__name__}: {exc}"]}
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        return {"status": "error", "diagnostics": [f"bad request: {type(exc).__name__}: {exc}"]}
    return {"status": "ok", "result": result}


def dumps(response: dict) -> str:
    return json.dumps(response, sort_keys=True, separators=(",", ":"))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="quasilang", description=__doc__)
    parser.add_argument("cmd", help="subcommand, e.g. poset.leq or genfun.closed")
    parser.add_argument("--in", dest="infile", help="JSON payload file (default stdin)")
    parser.add_argument("--out", dest="outfile", help="output file (default stdout)")
    parser.add_argument("--degree", type=int, help="cap series degree")
    parser.add_argument("--nmax", type=int, help="cap iterated powers")
    parser.add_argument("--budget", type=int, help="cap simplex counts")
    args = parser.parse_args(argv)
    if args.infile:
        with open(args.infile, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    else:
        text = sys.stdin.read().strip()
        payload = json.loads(text) if text else {}
    payload["cmd"] = args.cmd
    for flag in ("degree", "nmax", "budget"):
        value = getattr(args, flag)
        if value is not None:
            payload[flag] = value
    response = execute_request(payload)
    text = dumps(response)
    if args.outfile:
        with open(args.outfile, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if response["status"] == "ok" else 1
