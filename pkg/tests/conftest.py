import pytest

from dslglue import example_path
from dslglue.glue import load_glue
from dslglue.diagram import load_diagram
from dslglue.jsonio import load_dsl


@pytest.fixture(scope="session")
def dslu():
    return load_dsl(example_path("dslu.dsl.json"))


@pytest.fixture(scope="session")
def dslp():
    return load_dsl(example_path("dslp.dsl.json"))


@pytest.fixture(scope="session")
def bnu():
    return load_dsl(example_path("bnu.dsl.json"))


@pytest.fixture(scope="session")
def glue_spec():
    return load_glue(example_path("dslu-dslp.glue.json"))


@pytest.fixture(scope="session")
def bad_glue_spec():
    return load_glue(example_path("bad-structstr.glue.json"))


@pytest.fixture(scope="session")
def span_diagram():
    return load_diagram(example_path("span.diag.json"))


@pytest.fixture(scope="session")
def discrete_diagram():
    return load_diagram(example_path("discrete.diag.json"))
