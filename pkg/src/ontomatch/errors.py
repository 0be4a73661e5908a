"""Exception hierarchy shared across the package."""


class OntomatchError(Exception):
    """Base class for every error this package raises deliberately."""


class InputFormatError(OntomatchError):
    """An input document violates its file format."""


class OntologySyntaxError(InputFormatError):
    """Malformed ontology document: bad JSON or a schema violation."""


class DuplicateIdError(InputFormatError):
    """The same identifier is declared more than once."""


class DanglingReferenceError(InputFormatError):
    """A declaration references an identifier that does not resolve."""


class SubclassCycleError(InputFormatError):
    """The direct-superclass relation contains a cycle."""


class AlignmentFormatError(InputFormatError):
    """Malformed alignment document."""


class UnknownEntityError(OntomatchError):
    """An operation was asked about an identifier the ontology does not hold."""


class ContractViolationError(OntomatchError):
    """An internal contract was broken (shape mismatch, out-of-range score)."""
