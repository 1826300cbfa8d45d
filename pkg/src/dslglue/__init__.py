"""DSLs as colored operads of sets, glued by pushouts and colimits."""
from importlib import resources

__version__ = "0.1.0"


def example_path(name: str):
    """Path of a packaged example file such as ``"dslu.dsl.json"``."""
    return resources.files(__name__).joinpath("data", name)
