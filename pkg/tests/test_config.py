import logging
from fractions import Fraction

import pytest

from csmexact.config import RunConfig, build_config, load_config_file
from csmexact.operators import ModelParams
from csmexact.utils import THREADS_ENV

logger = logging.getLogger(__name__)


@pytest.fixture(scope='function')
def config_file(tmp_path):
    path = tmp_path / 'run.yaml'
    path.write_text('n-particles: 3\n'
                    'lambda: "3/2"\n'
                    'lambda1: 1\n'
                    'threads: 2\n'
                    'format: csv\n')
    return path


def test_defaults(monkeypatch):
    logger.debug('test_defaults')
    monkeypatch.delenv(THREADS_ENV, raising=False)
    cfg = RunConfig('spectrum')
    assert cfg.model_params() == ModelParams(2, 1, 1, 1)
    assert cfg.fmt == 'json'
    assert cfg.level is None
    assert cfg.threads >= 1


def test_load_config_file(config_file):
    logger.debug('test_load_config_file')
    settings = load_config_file(config_file)
    assert settings == {'n_particles': 3, 'lam': '3/2', 'lam1': 1,
                        'threads': 2, 'fmt': 'csv'}


def test_layering(config_file, monkeypatch):
    logger.debug('test_layering')
    monkeypatch.delenv(THREADS_ENV, raising=False)
    cfg = build_config('spectrum', {'lambda1': '1/2'}, config_file)
    assert cfg.n_particles == 3
    assert cfg.lam == Fraction(3, 2)
    assert cfg.lam1 == Fraction(1, 2)
    assert cfg.threads == 2
    # the environment beats the file, flags beat both
    monkeypatch.setenv(THREADS_ENV, '5')
    assert build_config('spectrum', {}, config_file).threads == 5
    assert build_config('spectrum', {'threads': 1}, config_file).threads == 1


def test_rejects_floats(tmp_path):
    logger.debug('test_rejects_floats')
    path = tmp_path / 'bad.yaml'
    path.write_text('lambda: 0.5\n')
    with pytest.raises(ValueError):
        load_config_file(path)
    with pytest.raises(ValueError):
        build_config('solve', {'lambda': '0.5'})


def test_rejects_unknown_keys(tmp_path):
    logger.debug('test_rejects_unknown_keys')
    path = tmp_path / 'bad.yaml'
    path.write_text('temperature: 3\n')
    with pytest.raises(ValueError):
        load_config_file(path)
    path.write_text('- 1\n- 2\n')
    with pytest.raises(ValueError):
        load_config_file(path)


def test_rejects_bad_values():
    logger.debug('test_rejects_bad_values')
    with pytest.raises(ValueError):
        RunConfig('launch')
    with pytest.raises(ValueError):
        RunConfig('solve', fmt='xml')
    with pytest.raises(ValueError):
        RunConfig('solve', level=-1)
    with pytest.raises(ValueError):
        RunConfig('solve', n_particles='2')
