"""The ``wmba`` command line: verify, derive and report."""

import argparse
import sys

from .expr import ParseError
from .field import FieldError, field_from_tag
from .linalg import LinMap, solve_factor, vec, Unsolvable
from . import specfile, suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
EMITS = ("T3", "T4", "Pi", "R", "S")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def build_parser():
    p = _Parser(prog="wmba", description="Exact verification of weak multiplier bialgebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("file")
    v.add_argument("--suite", default="all", choices=suites.SUITES + ("all",))
    v.add_argument("--field", default="q")
    v.add_argument("--format", default="text", choices=("text", "json"))
    d = sub.add_parser("derive", help="print derived structure")
    d.add_argument("file")
    d.add_argument("--emit", default=",".join(EMITS))
    d.add_argument("--field", default="q")
    r = sub.add_parser("report", help="write the full JSON report")
    r.add_argument("file")
    r.add_argument("-o", "--output", required=True)
    r.add_argument("--field", default="q")
    return p


# formatting ---------------------------------------------------------------------------

def _term(c, label, F):
    if c == F.one:
        return label
    if c == -F.one:
        return "-" + label
    return "%s %s" % (F.format(c), label)


def format_vector(coords, labels, F):
    if not coords:
        return "0"
    parts = [_term(coords[k], labels[k], F) for k in sorted(coords)]
    return " + ".join(parts).replace("+ -", "- ")


def _tuple_labels(index, labels, k):
    n = len(labels)
    out = []
    for _ in range(k):
        index, r = divmod(index, n)
        out.append(labels[r])
    return list(reversed(out))


def format_pairmap(name, m, labels, F):
    n = len(labels)
    pair = [a + "⊗" + b for a in labels for b in labels]
    lines = []
    for j, col in enumerate(m.cols):
        if col:
            a, b = _tuple_labels(j, labels, 2)
            lines.append("%s(%s⊗%s) = %s" % (name, a, b, format_vector(col, pair, F)))
    return lines


def as_element(W, mult):
    """Coordinates of a ∈ A with mult = (a·-, -·a), or None."""
    n, F = W.n, W.field
    if n == 0:
        return {}
    K = LinMap(n, n * n, [vec(W.alg.left_mult({a: F.one})) for a in range(n)], F)
    try:
        x = solve_factor(K, LinMap(1, n * n, [vec(mult.lam)], F), "right")
    except Unsolvable:
        return None
    coords = x.cols[0]
    if W.alg.left_mult(coords) != mult.lam or W.alg.right_mult(coords) != mult.rho:
        return None
    return coords


def format_multiplier(W, mult, basis_name="M(A)"):
    c = as_element(W, mult)
    if c is not None:
        return format_vector(c, W.labels, W.field)
    from .algebra import multiplier_algebra
    M = multiplier_algebra(W.alg)
    return "%s%s" % (basis_name, format_vector(M.coords(mult), ["m%d" % i for i in range(M.dim)], W.field))


def derive_lines(W, emit):
    from .core import T3, T4, pi_maps, base_R, base_L
    from .antipode import antipode
    F, labels = W.field, W.labels
    out = []
    if "T3" in emit:
        out.append("# T3")
        out.extend(format_pairmap("T3", T3(W), labels, F))
    if "T4" in emit:
        out.append("# T4")
        out.extend(format_pairmap("T4", T4(W), labels, F))
    if "Pi" in emit:
        P = pi_maps(W)
        for key, sym in (("piL", "PiL"), ("piR", "PiR"), ("pibarL", "PibarL"), ("pibarR", "PibarR")):
            out.append("# %s" % sym)
            for a, m in enumerate(P.mults[key]):
                out.append("%s(%s) = %s" % (sym, labels[a], format_multiplier(W, m)))
    if "R" in emit:
        for side, getter in (("R", base_R), ("L", base_L)):
            B = getter(W)
            out.append("# %s (dim %d)" % (side, B.dim))
            for k, m in enumerate(B.basis):
                out.append("%s = %s" % (B.alg.labels[k], format_multiplier(W, m)))
    if "S" in emit:
        D = antipode(W)
        out.append("# S")
        for a, m in enumerate(D.mults):
            out.append("S(%s) = %s" % (labels[a], format_multiplier(W, m)))
    return out


def text_report(data):
    lines = ["fixture %s over %s (dim %d)" % (data["fixture"], data["field"], data["dim"])]
    for s in data["suites"]:
        bad = [c for c in s["checks"] if not c["ok"]]
        lines.append("%-10s %s  %d checks, %d failed, %d skipped" % (
            s["suite"], "PASS" if s["ok"] else "FAIL", len(s["checks"]), len(bad), len(s["skipped"])))
        for c in bad:
            w = " at (%s)" % ", ".join(c["witness"]) if c.get("witness") else ""
            d = ": %s" % c["detail"] if c.get("detail") else ""
            lines.append("  FAIL %s%s%s" % (c["name"], w, d))
    lines.append("overall %s" % ("PASS" if data["ok"] else "FAIL"))
    return "\n".join(lines) + "\n"


# commands -----------------------------------------------------------------------------

def _load(args):
    field = field_from_tag(args.field)
    return specfile.load_spec(args.file, field)


def cmd_verify(args, out):
    W = _load(args)
    names = suites.SUITES if args.suite == "all" else (args.suite,)
    data = suites.full_report(W, names)
    out.write(specfile.report_json(data) if args.format == "json" else text_report(data))
    return EXIT_OK if data["ok"] else EXIT_FAIL


def cmd_derive(args, out):
    emit = [e.strip() for e in args.emit.split(",") if e.strip()]
    bad = [e for e in emit if e not in EMITS]
    if bad:
        raise _UsageError("unknown --emit item(s): %s (choose from %s)" % (", ".join(bad), ",".join(EMITS)))
    W = _load(args)
    out.write("\n".join(derive_lines(W, emit)) + "\n")
    return EXIT_OK


def cmd_report(args, out):
    W = _load(args)
    data = suites.full_report(W)
    specfile.save_report(data, args.output)
    out.write("wrote %s (%s)\n" % (args.output, "PASS" if data["ok"] else "FAIL"))
    return EXIT_OK if data["ok"] else EXIT_FAIL


COMMANDS = {"verify": cmd_verify, "derive": cmd_derive, "report": cmd_report}


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except _UsageError as e:
        err.write("wmba: error: %s\n" % e)
        return EXIT_USAGE
    except SystemExit as e:        # --help
        return e.code if isinstance(e.code, int) else EXIT_OK
    except (ParseError, FieldError, OSError) as e:
        err.write("wmba: %s\n" % e)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
