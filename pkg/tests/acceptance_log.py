"""Shared record of acceptance outcomes, printed in the terminal summary."""

RESULTS = {}


def record(number, ok, detail):
    RESULTS[number] = (bool(ok), detail)
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
    return ok
