# config.py
import logging
import os
from typing import Any, Dict, Optional

SEED_ENV_VAR = "HYPERQUADRIC_SEED"
REPORT_SCHEMA_VERSION = 1
LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'


class FuzzConfig:
    """Configuration class for sampling, generation and corpus parameters"""

    DEFAULT_SEED = 20240601
    DEFAULT_TRIALS = 30
    DEFAULT_HEIGHT = 10
    DEFAULT_RETRIES = 8
    DEFAULT_MAX_DIM = 8
    DEFAULT_MAX_DEGREE = 3
    DEFAULT_SEEDS = 1
    DEFAULT_SIGN_TRIALS = 200
    DEFAULT_PAIR_TRIALS = 1000
    DEFAULT_PLANE_TRIALS = 6
    DEFAULT_WORKERS = 1
    DEFAULT_DATA_DIR = "data"

    @classmethod
    def create_custom_config(cls, **kwargs) -> Dict[str, Any]:
        """Create a custom configuration; unknown keys are rejected"""
        config = {
            'seed': kwargs.pop('seed', None),
            'trials': kwargs.pop('trials', cls.DEFAULT_TRIALS),
            'height': kwargs.pop('height', cls.DEFAULT_HEIGHT),
            'retries': kwargs.pop('retries', cls.DEFAULT_RETRIES),
            'max_dim': kwargs.pop('max_dim', cls.DEFAULT_MAX_DIM),
            'max_degree': kwargs.pop('max_degree', cls.DEFAULT_MAX_DEGREE),
            'seeds': kwargs.pop('seeds', cls.DEFAULT_SEEDS),
            'sign_trials': kwargs.pop('sign_trials', cls.DEFAULT_SIGN_TRIALS),
            'pair_trials': kwargs.pop('pair_trials', cls.DEFAULT_PAIR_TRIALS),
            'plane_trials': kwargs.pop('plane_trials', cls.DEFAULT_PLANE_TRIALS),
            'workers': kwargs.pop('workers', cls.DEFAULT_WORKERS),
            'data_dir': kwargs.pop('data_dir', cls.DEFAULT_DATA_DIR),
        }
        if kwargs:
            raise ValueError(f"Unknown configuration keys: {', '.join(sorted(kwargs))}")
        if config['seed'] is None:
            config['seed'] = default_seed()
        if config['height'] < 1:
            raise ValueError("height must be at least 1")
        return config


def default_seed() -> int:
    """Seed from HYPERQUADRIC_SEED when set, the built-in default otherwise"""
    value = os.environ.get(SEED_ENV_VAR)
    if value is None or not value.strip():
        return FuzzConfig.DEFAULT_SEED
    try:
        return int(value)
    except ValueError:
        raise ValueError(f"{SEED_ENV_VAR} must be an integer, got {value!r}")


def setup_logging(level: str = "WARNING", log_file: Optional[str] = None) -> None:
    """Install the root handler(s); safe to call more than once"""
    handlers = [logging.StreamHandler()]
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format=LOG_FORMAT,
        handlers=handlers,
        force=True,
    )
