"""One line per acceptance criterion, printed at the end of the pytest run."""

LINES: list[str] = []


def record(number, ok: bool, text: str):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {text}"
    LINES.append(line)
    print(line)
    return ok
