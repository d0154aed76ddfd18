class InvalidSeparation(Exception):
    def __init__(self, message: str = "Separation violates its structural conditions.") -> None:
        self.message = message
        super().__init__(self.message)


class NotFitting(InvalidSeparation):
    def __init__(self, message: str = "Separation does not fit the regions of the template.") -> None:
        super().__init__(message)


class RootNotInMaster(InvalidSeparation):
    def __init__(self, message: str = "Root must lie inside the master side V1 and U.") -> None:
        super().__init__(message)


class RootNotClique(InvalidSeparation):
    def __init__(self, message: str = "Linearized decomposition needs a clique root.") -> None:
        super().__init__(message)


class NotProper(InvalidSeparation):
    def __init__(self, message: str = "Near-cliques are not decomposed.") -> None:
        super().__init__(message)


class BoundViolated(Exception):
    def __init__(self, message: str = "Decomposition list exceeds its counting bound.") -> None:
        self.message = message
        super().__init__(self.message)


class UnresolvedSigma(Exception):
    def __init__(self, message: str = "A region value function is still waiting for its servant.") -> None:
        self.message = message
        super().__init__(self.message)


class DomainMismatch(Exception):
    def __init__(self, message: str = "Table keys differ from the stable sets of the pattern.") -> None:
        self.message = message
        super().__init__(self.message)


class NoLeafMethod(Exception):
    def __init__(self, message: str = "No leaf method applies to this template.") -> None:
        self.message = message
        super().__init__(self.message)


class NotInClass(NoLeafMethod):
    def __init__(
        self, message: str = "Graph is outside the decomposable class.", history: list[str] | None = None
    ) -> None:
        self.history = history or []
        super().__init__(message)


class NotGoodFan(NoLeafMethod):
    def __init__(self, message: str = "Template is not a good fan-template.") -> None:
        super().__init__(message)


class StructuralConditionFailed(Exception):
    def __init__(self, message: str = "Nonadjacent pairs of U must lie in one block fully adjacent to r.") -> None:
        self.message = message
        super().__init__(self.message)


class DNotMonotone(Exception):
    def __init__(self, message: str = "Table must be nonnegative and inclusion-wise non-increasing.") -> None:
        self.message = message
        super().__init__(self.message)
