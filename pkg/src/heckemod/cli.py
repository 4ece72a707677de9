"""Command-line front end: verification suites, single evaluations, tables.

Exit codes: 0 success, 1 verification failure (witness JSON on stdout),
2 argument/parse errors, 3 domain errors (a named precondition was violated),
4 I/O errors. Identical inputs produce byte-identical outputs regardless of
``--jobs``; table files are written to a temp name and atomically renamed, so
failures never leave partial files.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .algebra import GroupRingElem, qd_str
from .characters import character_by_name, characters
from .errors import (
    HeckemodError,
    InvalidCartanType,
    InvalidCharacter,
    NonDominant,
    NonReducedWord,
    RatioNotMonomial,
    WeylGroupTooLarge,
    WrongFamily,
)
from .formulas import (
    bessel_value,
    casselman_shalika,
    demazure_character,
    dominant_coweights_up_to_height,
    iwahori_image,
    macdonald,
    shalika,
    theorem_lhs,
    theorem_rhs,
    weyl_character,
)
from .root_system import build_root_system, element_of_word
from .verify import (
    BOX_CAP_DEFAULT,
    BOX_RADIUS_DEFAULT,
    DEFAULT_TYPES,
    MUTATION_SUITE,
    SUITES,
    run_suite,
)

OUTPUT_DIR_ENV = "HECKEMOD_OUTPUT_DIR"

PARSE_ERROR, DOMAIN_ERROR, IO_ERROR = 2, 3, 4

#: formula name -> (needs_character, needs_lambda, implied_character)
FORMULAS = {
    "theorem-lhs": (True, True, None),
    "theorem-rhs": (True, True, None),
    "weyl-char": (False, True, None),
    "demazure-char": (False, True, None),
    "casselman-shalika": (False, True, "sign"),
    "macdonald": (False, True, "triv"),
    "shalika": (False, True, "neg-short"),
    "bessel-value": (False, False, "neg-long"),
    "iwahori-image": (True, True, None),
}


class DomainExit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _parse_lambda(text: str, rank: int) -> tuple[int, ...]:
    try:
        coords = tuple(int(c.strip()) for c in text.split(","))
    except ValueError:
        raise DomainExit(PARSE_ERROR, f"cannot parse coweight {text!r}: expected comma-separated integers")
    if len(coords) != rank:
        raise DomainExit(PARSE_ERROR, f"coweight {text!r} has {len(coords)} coordinates, rank is {rank}")
    return coords


def _parse_word(text: str, rank: int) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        word = tuple(int(c.strip()) - 1 for c in text.split(","))
    except ValueError:
        raise DomainExit(PARSE_ERROR, f"cannot parse word {text!r}: expected comma-separated indices")
    if any(i < 0 or i >= rank for i in word):
        raise DomainExit(PARSE_ERROR, f"word {text!r} has indices outside 1..{rank}")
    return word


def _evaluate_formula(type_name: str, formula: str, character: str | None,
                      lam_text: str | None, word_text: str | None) -> dict:
    """One formula evaluation; returns the row dict used by eval and table."""
    rs = build_root_system(type_name)
    needs_char, needs_lam, implied = FORMULAS[formula]
    char_name = character if needs_char else (implied or "-")
    if needs_char and character is None:
        raise DomainExit(PARSE_ERROR, f"formula {formula} requires --character")
    lam = None
    if needs_lam:
        if lam_text is None:
            raise DomainExit(PARSE_ERROR, f"formula {formula} requires --lambda")
        lam = _parse_lambda(lam_text, rs.rank)

    extra: dict = {}
    if formula == "theorem-lhs":
        value = theorem_lhs(character_by_name(rs, character), lam)
    elif formula == "theorem-rhs":
        value = theorem_rhs(character_by_name(rs, character), lam)
    elif formula == "weyl-char":
        value = weyl_character(rs, lam)
    elif formula == "demazure-char":
        value = demazure_character(rs, lam)
    elif formula == "casselman-shalika":
        pair = casselman_shalika(rs, lam)
        value = pair.closed_form
        extra["theorem_form"] = pair.theorem_form.to_json_obj()
    elif formula == "macdonald":
        value = macdonald(rs, lam)
    elif formula == "shalika":
        forms = shalika(rs, lam)
        value = forms.theorem_form
        extra["rewritten_form"] = forms.rewritten_form.to_json_obj()
        extra["forms_agree"] = forms.theorem_form == forms.rewritten_form
    elif formula == "bessel-value":
        report = bessel_value(rs)
        value = report.theorem_value
        extra["quoted_product"] = report.quoted_product.to_json_obj()
        extra["quoted_product_str"] = report.quoted_product.to_str()
        extra["unit_ratio_to_quoted"] = (
            list(report.unit_ratio[:2]) + [list(report.unit_ratio[2])]
            if report.unit_ratio is not None
            else None
        )
        extra["q_form_cofactor"] = report.q_form_cofactor.to_str()
    elif formula == "iwahori-image":
        eps = character_by_name(rs, character)
        w = element_of_word(rs, _parse_word(word_text or "", rs.rank))
        image = iwahori_image(eps, w, lam)
        value = image.value
        extra["measure"] = qd_str(image.measure)
    else:
        raise DomainExit(PARSE_ERROR, f"unknown formula {formula!r}")

    row = {
        "type": type_name,
        "character": char_name,
        "lambda": list(lam) if lam is not None else [],
        "formula": formula,
        "value": value.to_str(),
        "value_records": value.to_json_obj(),
    }
    row.update(extra)
    return row


def _translate_errors(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except DomainExit:
        raise
    except (InvalidCartanType, InvalidCharacter) as exc:
        raise DomainExit(PARSE_ERROR, str(exc))
    except (NonDominant, WrongFamily, NonReducedWord, WeylGroupTooLarge, RatioNotMonomial) as exc:
        raise DomainExit(DOMAIN_ERROR, f"{type(exc).__name__}: {exc}")
    except HeckemodError as exc:
        raise DomainExit(DOMAIN_ERROR, f"{type(exc).__name__}: {exc}")


# --- verify -----------------------------------------------------------------


def _suite_task(args):
    suite, type_name, radius, cap, mutate = args
    return [r.to_json_obj() for r in run_suite(suite, type_name, radius=radius, cap=cap, mutate=mutate)]


def cmd_verify(args) -> int:
    types = args.type or list(DEFAULT_TYPES)
    for t in types:
        _translate_errors(build_root_system, t)
    if args.mutate is not None:
        if args.mutate not in MUTATION_SUITE:
            raise DomainExit(PARSE_ERROR, f"unknown mutation {args.mutate!r}; known: {sorted(MUTATION_SUITE)}")
        suites = [MUTATION_SUITE[args.mutate]]
    elif args.suite:
        for s in args.suite:
            if s not in SUITES:
                raise DomainExit(PARSE_ERROR, f"unknown suite {s!r}; known: {sorted(SUITES)}")
        suites = args.suite
    else:
        suites = list(SUITES)

    tasks = []
    for t in types:
        rs = build_root_system(t)
        if args.max_rank is not None and rs.rank > args.max_rank:
            continue
        for s in suites:
            tasks.append((s, t, args.box, args.cap, args.mutate))

    def run_all():
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                return list(pool.map(_suite_task, tasks))
        return [_suite_task(t) for t in tasks]

    chunks = _translate_errors(run_all)
    results = [r for chunk in chunks for r in chunk]
    results.sort(key=lambda r: (r["identity"], r["type"], r["character"] or ""))

    ok = all(r["status"] == "pass" for r in results)
    if args.output == "json":
        print(json.dumps({"ok": ok, "results": results}, sort_keys=True, indent=2))
    else:
        for r in results:
            line = f"{r['status'].upper():4s} {r['identity']:22s} {r['type']:3s} {r['character'] or '-':10s} checks={r['checked']}"
            print(line)
            if r["status"] == "fail":
                print("     witness: " + json.dumps(r["witness"], sort_keys=True))
        print(f"{'OK' if ok else 'FAIL'}: {sum(r['status'] == 'pass' for r in results)}/{len(results)} identities passed")
        if not ok:
            failures = [r for r in results if r["status"] == "fail"]
            print(json.dumps({"ok": False, "failures": failures}, sort_keys=True))
    return 0 if ok else 1


# --- eval ---------------------------------------------------------------------


def cmd_eval(args) -> int:
    if args.formula not in FORMULAS:
        raise DomainExit(PARSE_ERROR, f"unknown formula {args.formula!r}; known: {sorted(FORMULAS)}")
    row = _translate_errors(
        _evaluate_formula, args.type, args.formula, args.character, getattr(args, "lam", None), args.word
    )
    if args.output == "json":
        print(json.dumps(row, sort_keys=True, indent=2))
    elif args.output == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["type", "character", "lambda", "formula", "value"])
        writer.writerow([row["type"], row["character"], ",".join(map(str, row["lambda"])), row["formula"], row["value"]])
        sys.stdout.write(buf.getvalue())
    else:
        print(row["value"])
        for key in ("rewritten_form", "theorem_form"):
            if key in row:
                print(f"{key}: {GroupRingElem.from_json_obj(len(row['lambda']) or 1, row[key]).to_str()}")
        if "quoted_product_str" in row:
            print(f"quoted_product: {row['quoted_product_str']}")
            print(f"unit_ratio_to_quoted: {row['unit_ratio_to_quoted']}")
            print(f"q_form_cofactor: {row['q_form_cofactor']}")
        if "measure" in row:
            print(f"measure: {row['measure']}")
        if "forms_agree" in row:
            print(f"forms_agree: {row['forms_agree']}")
    return 0


# --- table ----------------------------------------------------------------------


def _table_row(args):
    type_name, char_name, lam, formula = args
    needs_char = FORMULAS[formula][0]
    return _evaluate_formula(
        type_name, formula,
        char_name if needs_char else None,
        ",".join(map(str, lam)) if lam is not None else None,
        "",
    )


def _atomic_write(path: str, data: str) -> None:
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-heckemod-")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cmd_table(args) -> int:
    rs = _translate_errors(build_root_system, args.type)
    if args.characters == "all":
        char_names = [eps.name for eps in characters(rs)]
    else:
        char_names = [c.strip() for c in args.characters.split(",")]
        for c in char_names:
            _translate_errors(character_by_name, rs, c)
    formulas = [f.strip() for f in args.formulas.split(",")]
    for f in formulas:
        if f not in FORMULAS:
            raise DomainExit(PARSE_ERROR, f"unknown formula {f!r}; known: {sorted(FORMULAS)}")
        if f == "iwahori-image":
            raise DomainExit(PARSE_ERROR, "iwahori-image needs --word; use eval for it")

    lambdas = dominant_coweights_up_to_height(rs, args.height)
    tasks = []
    for formula in formulas:
        needs_char, needs_lam, implied = FORMULAS[formula]
        fam_guarded = formula in ("shalika", "bessel-value")
        if fam_guarded and rs.cartan_type.family != "B":
            continue
        per_chars = char_names if needs_char else [implied or "-"]
        per_lams = lambdas if needs_lam else [None]
        for char_name in per_chars:
            for lam in per_lams:
                tasks.append((args.type, char_name, lam, formula))

    def run_all():
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                return list(pool.map(_table_row, tasks))
        return [_table_row(t) for t in tasks]

    rows = _translate_errors(run_all)
    rows.sort(key=lambda r: (r["type"], r["character"], r["lambda"], r["formula"]))

    out_dir = args.out or os.environ.get(OUTPUT_DIR_ENV) or "."
    try:
        os.makedirs(out_dir, exist_ok=True)
        base = os.path.join(out_dir, f"table_{args.type}")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["type", "character", "lambda", "formula", "value"])
        for r in rows:
            writer.writerow(
                [r["type"], r["character"], ",".join(map(str, r["lambda"])), r["formula"], r["value"]]
            )
        _atomic_write(base + ".csv", buf.getvalue())
        _atomic_write(base + ".json", json.dumps(rows, sort_keys=True, indent=2) + "\n")
    except OSError as exc:
        raise DomainExit(IO_ERROR, f"cannot write table: {exc}")
    print(f"wrote {base}.csv and {base}.json ({len(rows)} rows)")
    return 0


# --- entry point -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heckemod",
        description="Exact verification and evaluation of Hecke-module operator identities",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run identity verification suites")
    p_verify.add_argument("--type", action="append", help="Cartan type (repeatable); default: the standard list")
    p_verify.add_argument("--max-rank", type=int, default=None)
    p_verify.add_argument("--box", type=int, default=BOX_RADIUS_DEFAULT, help="monomial box radius")
    p_verify.add_argument("--cap", type=int, default=BOX_CAP_DEFAULT, help="max monomials per box")
    p_verify.add_argument("--suite", action="append", help="suite name (repeatable); default: all")
    p_verify.add_argument("--mutate", default=None, help="test-only negative control; forces exit 1")
    p_verify.add_argument("--output", choices=("text", "json"), default="text")
    p_verify.add_argument("--jobs", type=int, default=1)
    p_verify.set_defaults(func=cmd_verify)

    p_eval = sub.add_parser("eval", help="evaluate one formula")
    p_eval.add_argument("--type", required=True)
    p_eval.add_argument("--character", default=None)
    p_eval.add_argument("--lambda", dest="lam", default=None, help="comma-separated coweight coordinates")
    p_eval.add_argument("--formula", required=True)
    p_eval.add_argument("--word", default="", help="1-based simple reflection indices for iwahori-image")
    p_eval.add_argument("--output", choices=("text", "json", "csv"), default="text")
    p_eval.set_defaults(func=cmd_eval)

    p_table = sub.add_parser("table", help="emit CSV/JSON value tables")
    p_table.add_argument("--type", required=True)
    p_table.add_argument("--characters", default="all")
    p_table.add_argument("--height", type=int, default=3, help="max coordinate sum of dominant coweights")
    p_table.add_argument("--formulas", default="theorem-lhs,theorem-rhs")
    p_table.add_argument("--out", default=None, help=f"output directory (or ${OUTPUT_DIR_ENV})")
    p_table.add_argument("--jobs", type=int, default=1)
    p_table.set_defaults(func=cmd_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainExit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
