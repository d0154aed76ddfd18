class CapExceeded(Exception):
    def __init__(self, message: str = "Graph exceeds the configured enumeration cap.") -> None:
        self.message = message
        super().__init__(self.message)


class RecordTooLarge(CapExceeded):
    def __init__(self, message: str = "Record base has more stable sets than the record cap allows.") -> None:
        super().__init__(message)


class InvalidGraph(Exception):
    def __init__(self, message: str = "Adjacency must be symmetric, loop free and labels unique.") -> None:
        self.message = message
        super().__init__(self.message)


class InvalidGrouping(Exception):
    def __init__(self, message: str = "Blocks do not form a grouping in the context graph.") -> None:
        self.message = message
        super().__init__(self.message)


class GraphParseError(Exception):
    def __init__(self, message: str = "Could not parse graph input.") -> None:
        self.message = message
        super().__init__(self.message)
