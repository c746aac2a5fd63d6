"""Exception hierarchy shared by all hiermine modules."""


class HiermineError(Exception):
    """Base class; the CLI turns any of these into a one-line diagnostic."""


class CodeBookError(HiermineError):
    pass


class SegmentConflictError(CodeBookError):
    pass


class SegmentFormatError(CodeBookError):
    pass


class CapacityError(CodeBookError):
    pass


class UnknownItemError(HiermineError, KeyError):
    """An item description names something absent from the code book."""

    def __init__(self, level, name, row=None):
        self.level = level
        self.name = name
        self.row = row
        where = f" (row {row})" if row is not None else ""
        super().__init__(f"unknown {level} {name!r}{where}")

    def __str__(self):
        return self.args[0]


class UnknownCodeError(HiermineError, KeyError):
    """A code segment is not assigned in the code book."""

    def __init__(self, level, code):
        self.level = level
        self.code = code
        super().__init__(f"code {code!r}: segment unassigned at {level} level")

    def __str__(self):
        return self.args[0]


class TokenFormatError(HiermineError, ValueError):
    def __init__(self, message, row=None, column=None, path=None):
        self.row = row
        self.column = column
        self.path = path
        loc = []
        if path is not None:
            loc.append(str(path))
        if row is not None:
            loc.append(f"row {row}")
        if column is not None:
            loc.append(f"token {column}")
        super().__init__(f"{', '.join(loc)}: {message}" if loc else message)


class TokenOverflowError(TokenFormatError):
    pass


class UncleanedInputError(HiermineError):
    pass


class ConfigError(HiermineError, ValueError):
    pass


class EmptyInputError(HiermineError, ValueError):
    pass


class NotFrequentError(HiermineError, KeyError):
    def __init__(self, itemset):
        self.itemset = tuple(itemset)
        super().__init__(f"itemset {list(self.itemset)} is not frequent")

    def __str__(self):
        return self.args[0]


class ClosureViolationError(HiermineError):
    pass
