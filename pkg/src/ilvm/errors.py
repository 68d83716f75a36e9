"""Exception hierarchy shared by every layer of ilvm."""


class IlvmError(Exception):
    pass


# -- reader ---------------------------------------------------------------

class ReadError(IlvmError):
    """Malformed s-expression text. ``offset`` is a UTF-8 byte offset."""

    def __init__(self, message, offset):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


class UnbalancedParens(ReadError):
    pass


class TrailingGarbage(ReadError):
    pass


class EmptyInput(ReadError):
    pass


class BadToken(ReadError):
    pass


# -- arithmetic -----------------------------------------------------------

class OutOfRangeOperand(IlvmError, ValueError):
    pass


# -- execution ------------------------------------------------------------

class ExecError(IlvmError):
    """Any fault raised while parsing or running an IL program."""


class BadForm(ExecError):
    """A subform the interpreter cannot give meaning to."""

    def __init__(self, message, form=None):
        super().__init__(message)
        self.form = form


class StackIndexOutOfBounds(ExecError, IndexError):
    def __init__(self, index):
        super().__init__(f"stack index {index} out of bounds")
        self.index = index


class MemIndexOutOfBounds(ExecError, IndexError):
    def __init__(self, index):
        super().__init__(f"memory index {index} out of bounds")
        self.index = index


class DoubleHalt(ExecError):
    pass


class ExecTypeError(ExecError, TypeError):
    def __init__(self, instr, value, expected="integer"):
        super().__init__(f"{instr}: expected {expected}, got {value}")
        self.instr = instr
        self.value = value


class UndefinedLabel(ExecError):
    def __init__(self, name):
        super().__init__(f"undefined label {name}")
        self.name = name


class DuplicateLabel(ExecError):
    def __init__(self, name):
        super().__init__(f"duplicate label {name}")
        self.name = name


class DuplicateDefineLabel(DuplicateLabel):
    pass


class EmptyProgram(ExecError):
    pass


class FellOffEnd(ExecError):
    pass


class OutOfFuel(ExecError):
    pass


class UnboundRegister(ExecError, KeyError):
    def __init__(self, name):
        super().__init__(f"register {name} read before assignment")
        self.name = name

    def __str__(self):
        return self.args[0]


class UnassignedAlocRead(ExecError):
    def __init__(self, name):
        super().__init__(f"abstract location {name} read before assignment")
        self.name = name


class FvarIndexTooLarge(ExecError):
    def __init__(self, name):
        super().__init__(f"frame variable {name} exceeds the bound frame variables")
        self.name = name


class UnboundName(ExecError):
    def __init__(self, name):
        super().__init__(f"unbound name {name}")
        self.name = name


# -- procedures -----------------------------------------------------------

class NotAProcedure(ExecError):
    def __init__(self, value):
        super().__init__(f"not a procedure: {value}")
        self.value = value


class EnvIndexOutOfBounds(ExecError, IndexError):
    def __init__(self, index):
        super().__init__(f"procedure environment index {index} out of bounds")
        self.index = index


class ArityMismatch(ExecError):
    def __init__(self, expected, got):
        super().__init__(f"arity mismatch: expected {expected} arguments, got {got}")
        self.expected = expected
        self.got = got


# -- grammars and registry ------------------------------------------------

class GrammarError(IlvmError):
    pass


class UnknownNonterminal(GrammarError, KeyError):
    def __init__(self, name):
        super().__init__(f"unknown nonterminal {name}")
        self.name = name

    def __str__(self):
        return self.args[0]


class DuplicateLanguageName(IlvmError):
    pass


class UnknownLanguage(IlvmError, KeyError):
    def __str__(self):
        return f"unknown language {self.args[0]}"


class RunError(IlvmError):
    """Outcome classes of a checked run other than a value."""


class InvalidProgram(RunError):
    def __init__(self, lang, nonterminal, term):
        from ilvm.sexpr import render
        super().__init__(
            f"{lang}: invalid program; expected: {lang}? ({nonterminal}); given: {render(term)}")
        self.lang = lang
        self.nonterminal = nonterminal
        self.term = term


class RuntimeFault(RunError):
    def __init__(self, lang, cause):
        super().__init__(f"{lang}: {type(cause).__name__}: {cause}")
        self.lang = lang
        self.cause = cause


class BadResult(RunError):
    def __init__(self, lang, expected, value):
        from ilvm.state import format_value
        super().__init__(f"{lang}: bad result; expected: {expected}; given: {format_value(value)}")
        self.lang = lang
        self.expected = expected
        self.value = value
