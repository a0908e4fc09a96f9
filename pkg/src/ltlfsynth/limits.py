"""Resource guards shared by the automaton and game builders."""

DEFAULT_MAX_STATES = 1_000_000
DEFAULT_MAX_PROPS = 20


class ResourceLimitError(RuntimeError):
    """A configured bound on states or propositions was exceeded."""

    def __init__(self, what: str, bound: int):
        super().__init__(f"{what} limit of {bound} exceeded")
        self.what = what
        self.bound = bound


def check_props(n_props: int, bound: int = DEFAULT_MAX_PROPS) -> None:
    if n_props > bound:
        raise ResourceLimitError("proposition", bound)
