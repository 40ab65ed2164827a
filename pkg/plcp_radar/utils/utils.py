import hashlib
import json

import numpy as np


def spawn_seeds(seed, n_partitions):
    """
    Splits a base seed into independent child seed sequences, one per trial partition

    Args:
        seed (int) : base seed of the run
        n_partitions (int) : number of partitions

    Returns:
        (list) : list of np.random.SeedSequence
    """
    assert n_partitions >= 1, 'need at least one partition, got %s' % n_partitions
    return np.random.SeedSequence(seed).spawn(n_partitions)


def split_trials(n_trials, n_partitions):
    """
    Args:
        n_trials (int) : total number of trials
        n_partitions (int) : number of partitions

    Returns:
        (list) : trials per partition, the first partitions take the remainder
    """
    base, rest = divmod(n_trials, n_partitions)
    return [base + (1 if i < rest else 0) for i in range(n_partitions)]


def config_hash(params):
    """
    Args:
        params (dict) : json serializable configuration

    Returns:
        (str) : sha256 hex digest of the canonical json dump of the configuration
    """
    dump = json.dumps(params, sort_keys=True, cls=ClassEncoder, separators=(',', ':'))
    return hashlib.sha256(dump.encode('utf-8')).hexdigest()


class ClassEncoder(json.JSONEncoder):
    def default(self, o):
        if isinstance(o, type):
            return {'$class': o.__module__ + "." + o.__name__}
        if isinstance(o, np.generic):
            return o.item()
        if isinstance(o, np.ndarray):
            return o.tolist()
        if hasattr(o, '_asdict'):
            return dict(o._asdict())
        if callable(o):
            return {'function': o.__name__}
        return json.JSONEncoder.default(self, o)


class ConfigError(ValueError):
    """
    Invalid configuration value

    Args:
        field (str): configuration key
        message (str): what is wrong, with units
    """
    def __init__(self, field, message):
        super(ConfigError, self).__init__('%s: %s' % (field, message))
        self.field = field
        self.message = message
