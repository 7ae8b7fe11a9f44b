"""Exception types shared across the toolkit.

Provers signal failure through return values (``None`` / result enums);
exceptions are reserved for malformed inputs and broken invariants.
"""


class TengramError(Exception):
    """Base class for all toolkit errors."""


# --- term layer ---------------------------------------------------------


class IndexCollision(TengramError):
    """An index would occur twice in the same polarity."""


class LengthMismatch(TengramError):
    """Paired index sequences have different lengths."""


class NonInjectiveRename(TengramError):
    """A free-index renaming maps two indices to the same target."""


class FreshnessViolation(TengramError):
    """A renaming target collides with an index that is not being renamed."""


class MissingIndexInOrder(TengramError):
    """A vertex order omits an index that occurs in the term."""


# --- type / judgement layer ---------------------------------------------


class ArityMismatch(TengramError):
    """Index sequences do not fit the valency of a type symbol."""


class MalformedJudgement(TengramError):
    """Term and sequent index sets do not match up."""


# --- derivations ---------------------------------------------------------


class RuleMismatch(TengramError):
    """A rule instance does not apply to the given premises."""


class BadStep(TengramError):
    """A derivation script line is malformed or inapplicable."""


class UnknownAxiom(TengramError):
    """A derivation references an axiom name that was not supplied."""


class AxiomReuse(TengramError):
    """A derivation uses an axiom more often than the supplied multiset allows."""


class HasAxioms(TengramError):
    """Cut elimination was asked to run on a derivation with non-logical axioms."""


class NotAPar(TengramError):
    """Par-inversion target is not a par type."""


class NotANabla(TengramError):
    """Binder-inversion target is not a nabla type."""


class SchemeMismatch(TengramError):
    """A judgement does not have the required axiom shape."""


class MissingEpsilonEdge(TengramError):
    """The nabla rule needs an empty-word edge that the term does not have."""


class LambekRestrictionViolated(TengramError):
    """A rule application would leave an empty context in restricted mode."""


# --- lexicalization / grammar engine -------------------------------------


class DeltaOnlyAxiom(TengramError):
    """An axiom's term consists of empty-word edges only and cannot be lexicalized."""


class NonLexicalAxiom(TengramError):
    """An operation requires lexical axioms but got one with an empty-word edge."""


class AxiomNotSingleType(TengramError):
    """An operation requires single-type axioms."""


class UnknownTerminal(TengramError):
    """A word uses a terminal the grammar does not declare."""


class BoundExceeded(TengramError):
    """A requested enumeration exceeds the configured bound."""


class Inconclusive(TengramError):
    """Search gave up because a budget cap was hit; not a negative answer."""


# --- linear lambda calculus / ACG ----------------------------------------


class LambdaTypeError(TengramError):
    """A lambda term does not have the claimed type."""


class NonLinear(TengramError):
    """A lambda term uses a variable zero or several times."""


class Untypeable(TengramError):
    """No type can be inferred for a lambda term."""


class UnknownAtom(TengramError):
    """A type references an undeclared atom."""


class UnknownConstant(TengramError):
    """A lambda term references an undeclared constant."""


class MissingAxiomTranslation(TengramError):
    """Judgement translation hit a constant with no supplied tensor axiom."""


class NotPolarized(TengramError):
    """Inverse translation needs a polarized judgement."""


class NotDerivable(TengramError):
    """Inverse translation was given an underivable judgement."""


class LexiconIllTyped(TengramError):
    """An ACG lexicon entry does not typecheck against its declared type."""


# --- surface syntax -------------------------------------------------------


class ParseError(TengramError):
    """Malformed surface syntax (terms, types, judgements, grammar files)."""
