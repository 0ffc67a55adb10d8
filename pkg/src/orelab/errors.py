"""Exception types raised across the package."""


class OrelabError(Exception):
    """Base class for every error raised by orelab."""


class AxiomViolation(OrelabError):
    def __init__(self, law, witness):
        self.law = law
        self.witness = witness
        super().__init__(f"ring axiom '{law}' fails at {witness}")


class UnsupportedSpec(OrelabError):
    pass


class NotAHomomorphism(OrelabError):
    def __init__(self, law, witness):
        self.law = law
        self.witness = witness
        super().__init__(f"map is not a ring homomorphism: '{law}' fails at {witness}")


class NotADerivation(OrelabError):
    def __init__(self, law, witness):
        self.law = law
        self.witness = witness
        super().__init__(f"map is not a sigma-derivation: '{law}' fails at {witness}")


class NotEnumerable(OrelabError):
    pass


class IndexOutOfRange(OrelabError):
    pass


class ContextMismatch(OrelabError):
    pass


class BoundTooLarge(OrelabError):
    pass


class WorkCapExceeded(OrelabError):
    pass


class UnknownFixture(OrelabError):
    pass


class ParseError(OrelabError):
    pass
