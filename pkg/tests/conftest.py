import pytest

from frilearn.dataset import Dataset, iris_path, load_csv
from frilearn.fuzzy import Example, build_partition


@pytest.fixture(scope="session")
def unit7():
    return build_partition(0.0, 1.0, 7, variable_name="u")


@pytest.fixture(scope="session")
def unit3():
    return build_partition(0.0, 1.0, 3, variable_name="x")


@pytest.fixture(scope="session")
def toy_dataset():
    """One variable, K=3 everywhere: (0 -> 1) and (1 -> 0)."""
    return Dataset(
        schema=(build_partition(0.0, 1.0, 3, variable_name="X"),),
        examples=(Example((0.0,), 1.0), Example((1.0,), 0.0)),
        output_partition=build_partition(0.0, 1.0, 3, variable_name="Y"),
    )


@pytest.fixture(scope="session")
def iris():
    return load_csv(iris_path(), "species")
