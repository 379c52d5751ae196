import os

DEFAULT_BUDGET = 10**8
BUDGET_ENV = "FROBENIUSKIT_BUDGET"


class BudgetExceeded(RuntimeError):
    pass


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{BUDGET_ENV} must be at least 1")
    return value


def check_budget(count: int, budget: int | None, what: str) -> None:
    limit = default_budget() if budget is None else budget
    if count > limit:
        raise BudgetExceeded(f"{what}: {count} exceeds the enumeration budget {limit}")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def require_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"p must be a prime, got {p!r}")
