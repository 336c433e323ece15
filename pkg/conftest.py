import pytest
from qncsim import create_app


def pytest_addoption(parser):
    parser.addoption('--runslow', action='store_true', default=False, help='运行耗时的蒙特卡洛扫描')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--runslow'):
        return
    skip_slow = pytest.mark.skip(reason='需要 --runslow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def app(monkeypatch):
    monkeypatch.delenv('QNCSIM_OUTPUT_DIR', raising=False)
    app = create_app('testing')
    return app


@pytest.fixture
def runner(app):
    return app.test_cli_runner()
