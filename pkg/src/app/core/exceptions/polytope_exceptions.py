class SpaceMismatch(Exception):
    def __init__(self, message: str = "Formulations do not share the same original variables.") -> None:
        self.message = message
        super().__init__(self.message)


class ShapeMismatch(Exception):
    def __init__(self, message: str = "System is not in the block shape required for elimination.") -> None:
        self.message = message
        super().__init__(self.message)


class Infeasible(Exception):
    def __init__(self, message: str = "Linear system is infeasible.") -> None:
        self.message = message
        super().__init__(self.message)


class Unbounded(Exception):
    def __init__(self, message: str = "Linear program is unbounded.") -> None:
        self.message = message
        super().__init__(self.message)


class BlowUpGuard(Exception):
    def __init__(self, message: str = "Too many variables for Fourier-Motzkin elimination.") -> None:
        self.message = message
        super().__init__(self.message)


class MissingLeaf(Exception):
    def __init__(self, message: str = "A leaf of the decomposition list has no formulation.") -> None:
        self.message = message
        super().__init__(self.message)


class SizeBoundViolated(Exception):
    def __init__(self, message: str = "Composed formulation exceeds its size bound.") -> None:
        self.message = message
        super().__init__(self.message)
