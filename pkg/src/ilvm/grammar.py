"""BNF grammars over s-expressions, matched the way Redex patterns are.

A grammar file holds one s-expression per nonterminal::

    (nt alternative ...)

Inside an alternative:

* a symbol naming a nonterminal of the grammar refers to it;
* a symbol naming a terminal class (``int32``, ``int64``, ``int61``,
  ``reg``, ``fvar``, ``aloc``, ``label``) matches that class;
* ``X_k`` (a nonterminal or class followed by ``_`` and a suffix) matches
  like ``X`` and additionally requires every occurrence of ``X_k`` in the
  same alternative to be the same subterm;
* a list matches a list element-wise, and ``p ...`` matches zero or more
  consecutive elements each matching ``p``;
* any other symbol or integer matches itself literally.

``label`` matches symbols that are not registers, frame variables or
abstract locations and that do not occur literally in the grammar.
"""

from dataclasses import dataclass
from importlib import resources

from ilvm.errors import FvarIndexTooLarge, GrammarError, UnknownNonterminal
from ilvm.lang_frames import Kind, classify
from ilvm.machine_ints import in_range
from ilvm.sexpr import is_int, read_all, render
from ilvm.state import REGISTER_SET

ELLIPSIS = "..."


def _kind(x):
    try:
        return classify(x)
    except FvarIndexTooLarge:
        return None


def _int_class(bits):
    return lambda g, e: is_int(e) and in_range(bits, e)


TERMINAL_CLASSES = {
    "int32": _int_class(32),
    "int61": _int_class(61),
    "int64": _int_class(64),
    "reg": lambda g, e: isinstance(e, str) and e in REGISTER_SET,
    "fvar": lambda g, e: isinstance(e, str) and _kind(e) is Kind.FVAR,
    "aloc": lambda g, e: isinstance(e, str) and _kind(e) is Kind.ALOC,
    "label": lambda g, e: (isinstance(e, str) and _kind(e) is Kind.LABEL
                           and e not in g.literals and e != ELLIPSIS),
}


@dataclass(frozen=True)
class Lit:
    datum: object


@dataclass(frozen=True)
class Ref:
    name: str
    is_class: bool
    binder: str = None


@dataclass(frozen=True)
class Seq:
    items: tuple  # of (pattern, repeated)


def _same(a, b):
    # structural equality that never confuses an integer with a symbol
    if isinstance(a, list) or isinstance(b, list):
        return (isinstance(a, list) and isinstance(b, list) and len(a) == len(b)
                and all(_same(x, y) for x, y in zip(a, b)))
    if isinstance(a, str) or isinstance(b, str):
        return isinstance(a, str) and isinstance(b, str) and a == b
    return a == b


class Grammar:
    def __init__(self, productions, start="p"):
        self.raw = productions
        self.start = start
        self.literals = set()
        self.productions = {nt: [self._compile(alt) for alt in alts]
                            for nt, alts in productions.items()}
        if start not in self.productions:
            raise UnknownNonterminal(start)

    # -- compilation --

    def _ref(self, sym):
        if sym in self.raw:
            return Ref(str(sym), False)
        if sym in TERMINAL_CLASSES:
            return Ref(str(sym), True)
        base, sep, _ = sym.rpartition("_")
        if sep and base in self.raw:
            return Ref(base, False, str(sym))
        if sep and base in TERMINAL_CLASSES:
            return Ref(base, True, str(sym))
        return None

    def _compile(self, pat):
        if isinstance(pat, list):
            items = []
            for x in pat:
                if isinstance(x, str) and x == ELLIPSIS:
                    if not items or items[-1][1]:
                        raise GrammarError(f"misplaced ... in {render(pat)}")
                    items[-1] = (items[-1][0], True)
                else:
                    items.append((self._compile(x), False))
            return Seq(tuple(items))
        if isinstance(pat, str):
            ref = self._ref(pat)
            if ref is not None:
                return ref
            self.literals.add(str(pat))
        return Lit(pat)

    # -- matching --

    def matches(self, nt, term):
        if nt not in self.productions and nt not in TERMINAL_CLASSES:
            raise UnknownNonterminal(nt)
        return self._match_ref(Ref(nt, nt not in self.productions), term, {})

    def is_class(self, name, term):
        return TERMINAL_CLASSES[name](self, term)

    def _nonterminal(self, nt, term):
        return any(next(self._match(alt, term, {}), None) is not None
                   for alt in self.productions[nt])

    def _match_ref(self, ref, term, env):
        if ref.is_class:
            return TERMINAL_CLASSES[ref.name](self, term)
        return self._nonterminal(ref.name, term)

    def _match(self, pat, term, env):
        """Yield every binding environment under which ``pat`` matches ``term``."""
        if isinstance(pat, Lit):
            if _same(pat.datum, term):
                yield env
        elif isinstance(pat, Ref):
            if pat.binder is not None and pat.binder in env:
                if _same(env[pat.binder], term):
                    yield env
            elif self._match_ref(pat, term, env):
                yield env if pat.binder is None else {**env, pat.binder: term}
        elif isinstance(term, list):
            yield from self._match_seq(pat.items, 0, term, 0, env)

    def _match_seq(self, items, i, terms, j, env):
        if i == len(items):
            if j == len(terms):
                yield env
            return
        pat, repeated = items[i]
        if not repeated:
            if j < len(terms):
                for env2 in self._match(pat, terms[j], env):
                    yield from self._match_seq(items, i + 1, terms, j + 1, env2)
            return
        if not any(r for _, r in items[i + 1:]):
            # the repetition must take exactly the elements the tail leaves over
            n = len(terms) - j - (len(items) - i - 1)
            if n < 0:
                return
            for t in terms[j:j + n]:
                env = next(self._match(pat, t, env), None)
                if env is None:
                    return
            yield from self._match_seq(items, i + 1, terms, j + n, env)
            return
        if j < len(terms):
            for env2 in self._match(pat, terms[j], env):
                yield from self._match_seq(items, i, terms, j + 1, env2)
        yield from self._match_seq(items, i + 1, terms, j, env)


def parse_grammar(text, start="p"):
    productions = {}
    for form in read_all(text):
        if not (isinstance(form, list) and len(form) >= 2 and isinstance(form[0], str)):
            raise GrammarError(f"bad production {render(form)}")
        if form[0] in productions:
            raise GrammarError(f"nonterminal {form[0]} defined twice")
        productions[str(form[0])] = form[1:]
    return Grammar(productions, start)


def load_grammar(path, start="p"):
    with open(path, encoding="utf-8") as f:
        return parse_grammar(f.read(), start)


def builtin_grammar(name):
    text = resources.files("ilvm.grammars").joinpath(f"{name}.grammar").read_text("utf-8")
    return parse_grammar(text)
