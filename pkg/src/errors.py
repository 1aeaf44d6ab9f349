class OrdlexError(Exception):
    """Base class for every error raised by ordlex."""


class OrdinalSyntaxError(OrdlexError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class OrdinalRangeError(OrdlexError, ValueError):
    pass


class OrdinalDepthError(OrdlexError, ValueError):
    pass


class AlphabetError(OrdlexError, ValueError):
    pass


class PrimitiveWordError(OrdlexError, ValueError):
    pass


class GrammarSyntaxError(OrdlexError, ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class UndeclaredSymbolError(GrammarSyntaxError):
    pass


class DuplicateRuleError(GrammarSyntaxError):
    pass


class NotRightLinearError(OrdlexError, ValueError):
    pass


class PreconditionError(OrdlexError, ValueError):
    pass


class NotWellOrderedError(PreconditionError):
    pass


class InvalidMarkingError(OrdlexError, ValueError):
    pass


class RankExpressionError(OrdlexError, ValueError):
    pass


class EnumerationCapError(OrdlexError, ValueError):
    pass


class OrderExprSyntaxError(OrdlexError, ValueError):
    pass
