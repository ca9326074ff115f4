class GuardError(Exception):
    """A request exceeded one of the hard feasibility guards.

    Exhaustive enumeration and orbit classification are only enabled below
    fixed instance-count limits; asking for more is refused outright rather
    than started and abandoned.
    """
