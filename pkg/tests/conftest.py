import pytest

import _criteria
from indexlab import bundled_table_a1, diff_golden, reproduce_all


def pytest_terminal_summary(terminalreporter):
    if not _criteria.RESULTS:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria")
    for _, line in sorted(_criteria.RESULTS):
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def dataset():
    return bundled_table_a1()


@pytest.fixture(scope="session")
def sorted_dataset(dataset):
    return dataset.sorted_by_name()


@pytest.fixture(scope="session")
def bundle(dataset):
    # full bootstrap depth: the published p-values are quoted at 10,000 replicates
    return reproduce_all(dataset, seed=42, replicates=10_000)


@pytest.fixture(scope="session")
def golden_diff(bundle):
    return diff_golden(bundle)
