"""Exception hierarchy.

Every error raised on purpose by this package derives from
:class:`WfstError`.  The CLI maps the families onto exit codes.
"""


class WfstError(Exception):
    pass


# weights

class NegativeWeight(WfstError, ValueError):
    pass


class InfiniteArcWeight(WfstError, ValueError):
    pass


class WeightParseError(WfstError, ValueError):
    pass


# machine structure

class UnknownState(WfstError, ValueError):
    pass


class UnknownSymbol(WfstError, ValueError):
    def __init__(self, symbol, table_name=None):
        self.symbol = symbol
        where = f" in {table_name}" if table_name else ""
        super().__init__(f"unknown symbol {symbol!r}{where}")


class NoInitialState(WfstError, ValueError):
    pass


class BrokenPath(WfstError, ValueError):
    pass


class NonAcceptingPath(WfstError, ValueError):
    pass


class NonTerminating(WfstError, RuntimeError):
    pass


class NoAcceptingPath(WfstError, ValueError):
    pass


# determinization

class DeterminizationError(WfstError):
    pass


class InputEpsilon(DeterminizationError, ValueError):
    pass


class StateBudgetExceeded(DeterminizationError, RuntimeError):
    def __init__(self, max_states):
        self.max_states = max_states
        super().__init__(
            f"determinization produced more than {max_states} states; "
            "the machine may not be determinizable"
        )


class NonFunctional(DeterminizationError, ValueError):
    """Some input string maps to two different output strings."""


class NonSubsequential(DeterminizationError, ValueError):
    """Output would still be pending when the input ends."""


# symbol tables and text formats

class SymbolTableError(WfstError, ValueError):
    pass


class DuplicateSymbol(SymbolTableError):
    pass


class DuplicateId(SymbolTableError):
    pass


class MissingEpsilon(SymbolTableError):
    pass


class ParseError(WfstError, ValueError):
    def __init__(self, message, line=None, section=None):
        self.line = line
        self.section = section
        prefix = ""
        if line is not None:
            prefix = f"line {line}: "
        if section is not None:
            prefix += f"[{section}] "
        super().__init__(prefix + message)


class SerializationError(WfstError, ValueError):
    pass


class MultipleInitials(SerializationError):
    pass


class NonUnitInitial(SerializationError):
    pass


# contracts

class ContractError(WfstError, ValueError):
    pass


class DanglingStateRef(ContractError):
    pass


class DuplicateStateId(ContractError):
    pass
