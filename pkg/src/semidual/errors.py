"""Exception types raised across the package."""


class SemidualError(ValueError):
    """Base class for input and contract errors."""


class OutOfRangeEntry(SemidualError):
    def __init__(self, row, col, value, order):
        self.row, self.col, self.value = row, col, value
        super().__init__(
            f"table entry ({row},{col}) = {value} outside 0..{order - 1}")


class NotAssociative(SemidualError):
    def __init__(self, x, y, z):
        self.triple = (x, y, z)
        super().__init__(f"associativity fails at (x,y,z) = {(x, y, z)}")


class NotAnIdeal(SemidualError):
    def __init__(self, element, multiplier, product):
        self.witness = (element, multiplier, product)
        super().__init__(
            f"{element} times {multiplier} gives {product}, outside the set")


class TableFormatError(SemidualError):
    pass


class NotCompletelySimple(SemidualError):
    pass


class NotRegular(SemidualError):
    pass


class NotAGroup(SemidualError):
    pass


class InvalidSandwich(SemidualError):
    pass


class NotPrime(SemidualError):
    pass


class TooLarge(SemidualError):
    pass


class SamePoint(SemidualError):
    pass


class TemplateDegenerate(SemidualError):
    pass


class ClosureBudgetExceeded(SemidualError):
    def __init__(self, budget):
        self.budget = budget
        super().__init__(f"closure exceeded the budget of {budget} members")


class PlaneTooSmall(SemidualError):
    pass


class UnknownName(SemidualError, KeyError):
    def __str__(self):
        return ValueError.__str__(self)
