"""Collects one result line per acceptance criterion for the terminal summary."""
import contextlib

RESULTS = {}


@contextlib.contextmanager
def criterion(number, title):
    notes = []
    try:
        yield notes
    except BaseException:
        RESULTS[number] = f"criterion {number} FAIL  {title}  {'; '.join(notes)}"
        raise
    RESULTS[number] = f"criterion {number} PASS  {title}  {'; '.join(notes)}"
