"""Shared store for acceptance outcomes, printed at the end of the pytest run."""

RESULTS = {}


def record(number, ok, summary):
    RESULTS[number] = (ok, summary)
    line = format_line(number)
    print(line)
    return line


def format_line(number):
    ok, summary = RESULTS[number]
    return "%s criterion %d: %s" % ("PASS" if ok else "FAIL", number, summary)
