"""Exceptions raised by the superjacobi package"""


class SuperJacobiError(Exception):
    """Base class for every error raised by this package"""


class PreconditionError(SuperJacobiError, ValueError):
    """An argument is outside the domain of the operation"""


class DivisionNotExact(SuperJacobiError, ArithmeticError):
    """A Laurent polynomial division left a remainder"""

    def __init__(self, dividend, divisor):
        self.dividend = dividend
        self.divisor = divisor
        super().__init__(f"division by {divisor} is not exact")


class NotSingular(SuperJacobiError, ValueError):
    """The diagram is regular but the operation needs a singular one"""

    def __init__(self, lam, n: int):
        self.lam = lam
        self.n = n
        super().__init__(f"partition {lam} is not singular for n={n}")


class NotAdjacent(SuperJacobiError, ValueError):
    """mu does not differ from lambda by exactly one box"""

    def __init__(self, lam, mu):
        self.lam = lam
        self.mu = mu
        super().__init__(f"{mu} is not obtained from {lam} by adding or removing one box")


class NotInS(SuperJacobiError, ValueError):
    """mu is not in S(lambda)"""

    def __init__(self, lam, mu):
        self.lam = lam
        self.mu = mu
        super().__init__(f"{mu} is not in S({lam})")


class LengthMismatch(SuperJacobiError):
    """A sharp chain has the wrong number of elements"""

    def __init__(self, lam, expected: int, actual: int):
        self.lam = lam
        self.expected = expected
        self.actual = actual
        super().__init__(f"sharp chain of {lam} has {actual} elements, expected {expected}")


class DegenerateParameters(SuperJacobiError):
    """The fixed slope t makes an eigenvalue gap or a Pieri coefficient vanish"""

    def __init__(self, message: str, t=None, pair=None):
        self.t = t
        self.pair = pair
        super().__init__(message)


class PoleAtLimit(SuperJacobiError, ArithmeticError):
    """A coefficient has a pole at k = -1"""

    def __init__(self, lam, t, exponent=None):
        self.lam = lam
        self.t = t
        self.exponent = exponent
        where = f" at monomial {exponent}" if exponent is not None else ""
        super().__init__(f"SJ_{lam}({t}) has a pole{where}")


class MultipleAtypicalRoots(SuperJacobiError):
    """More than one odd positive root is orthogonal to chi + rho"""

    def __init__(self, weight, roots):
        self.weight = weight
        self.roots = roots
        super().__init__(f"weight {weight} is atypical for several roots: {roots}")
