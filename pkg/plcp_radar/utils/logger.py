"""
Key/value and text logging for scenario runs.

Code modified from https://github.com/openai/baselines/blob/master/baselines/logger.py
Copyright (c) 2017 OpenAI (http://openai.com)
"""

import os
import sys
import os.path as osp
import json
import time
import datetime
import tempfile
from collections import OrderedDict

LOG_OUTPUT_FORMATS = ['stdout', 'log']
# Also valid: csv, json

DEBUG = 10
INFO = 20
WARN = 30
ERROR = 40
DISABLED = 50


class KVWriter(object):
    def writekvs(self, kvs):
        raise NotImplementedError


class SeqWriter(object):
    def writeseq(self, seq):
        raise NotImplementedError


class HumanOutputFormat(KVWriter, SeqWriter):
    def __init__(self, filename_or_file):
        if isinstance(filename_or_file, str):
            self.file = open(filename_or_file, 'wt')
            self.own_file = True
        else:
            assert hasattr(filename_or_file, 'write'), 'expected file or str, got %s' % filename_or_file
            self.file = filename_or_file
            self.own_file = False

    def writekvs(self, kvs):
        key2str = OrderedDict()
        for (key, val) in kvs.items():
            if isinstance(val, float):
                valstr = '%-10.4g' % (val,)
            else:
                valstr = str(val)
            key2str[self._truncate(key)] = self._truncate(valstr)

        if len(key2str) == 0:
            self.writeseq(['WARNING: tried to write empty key-value dict'])
            return
        keywidth = max(map(len, key2str.keys()))
        valwidth = max(map(len, key2str.values()))

        dashes = '-' * (keywidth + valwidth + 7)
        lines = [dashes]
        for (key, val) in key2str.items():
            lines.append('| %s%s | %s%s |' % (
                key,
                ' ' * (keywidth - len(key)),
                val,
                ' ' * (valwidth - len(val)),
            ))
        lines.append(dashes)
        self.file.write('\n'.join(lines) + '\n')
        self.file.flush()

    def _truncate(self, s):
        return s[:27] + '...' if len(s) > 30 else s

    def writeseq(self, seq):
        for arg in seq:
            self.file.write(arg)
        self.file.write('\n')
        self.file.flush()

    def close(self):
        if self.own_file:
            self.file.close()


class JSONOutputFormat(KVWriter):
    def __init__(self, filename):
        self.file = open(filename, 'wt')

    def writekvs(self, kvs):
        row = OrderedDict()
        for k, v in kvs.items():
            row[k] = v.item() if hasattr(v, 'dtype') else v
        self.file.write(json.dumps(row) + '\n')
        self.file.flush()

    def close(self):
        self.file.close()


class CSVOutputFormat(KVWriter):
    """
    Writes one row per dump. The header is the key order of the first dump,
    later rows must not introduce new keys. Floats are written with repr so
    that identical runs produce identical files.
    """
    def __init__(self, filename):
        self.file = open(filename, 'wt')
        self.keys = None
        self.sep = ','

    def writekvs(self, kvs):
        if self.keys is None:
            self.keys = list(kvs.keys())
            self.file.write(self.sep.join(self.keys) + '\n')
        extra_keys = [k for k in kvs.keys() if k not in self.keys]
        assert not extra_keys, 'csv header is fixed, got new keys %s' % extra_keys
        cells = [format_value(kvs.get(k)) for k in self.keys]
        assert not any(self.sep in cell for cell in cells), 'csv cells must not contain %r: %s' % (self.sep, cells)
        self.file.write(self.sep.join(cells) + '\n')
        self.file.flush()

    def close(self):
        self.file.close()


def format_value(val):
    """
    Args:
        val: scalar to write into a csv cell

    Returns:
        (str): repr for floats, empty string for None, str otherwise
    """
    if val is None:
        return ''
    if hasattr(val, 'dtype'):
        val = val.item()
    if isinstance(val, float):
        return repr(val)
    return str(val)


def make_output_format(format, ev_dir, stem='progress'):
    os.makedirs(ev_dir, exist_ok=True)
    if format == 'stdout':
        return HumanOutputFormat(sys.stdout)
    elif format == 'log':
        return HumanOutputFormat(osp.join(ev_dir, 'log.txt'))
    elif format == 'json':
        return JSONOutputFormat(osp.join(ev_dir, '%s.json' % stem))
    elif format == 'csv':
        return CSVOutputFormat(osp.join(ev_dir, '%s.csv' % stem))
    else:
        raise ValueError('Unknown format specified: %s' % (format,))

# ================================================================
# API
# ================================================================


def logkv(key, val):
    """
    Log a value of some quantity of the current run.
    If called many times, last value will be used.
    """
    Logger.CURRENT.logkv(key, val)


def logkvs(d):
    for (k, v) in d.items():
        logkv(k, v)


def dumpkvs():
    """
    Write all logged quantities as one row and clear them
    """
    Logger.CURRENT.dumpkvs()


def getkvs():
    return Logger.CURRENT.name2val


def log(*args, level=INFO):
    """
    Write the sequence of args, with no separators, to the console and output files (if configured).
    """
    Logger.CURRENT.log(*args, level=level)


def debug(*args):
    log(*args, level=DEBUG)


def warn(*args):
    log(*args, level=WARN)


def error(*args):
    log(*args, level=ERROR)


def get_dir():
    """
    Directory the log files are written to, None if the logger was not configured
    """
    return Logger.CURRENT.get_dir()


def save_manifest(manifest, encoder=None):
    """
    Writes the run manifest (configuration, seed, command) as manifest.json into the log directory
    """
    return Logger.CURRENT.save_manifest(manifest, encoder=encoder)


class ProfileKV:
    """
    Usage:
    with logger.ProfileKV("quadrature"):
        code
    """
    def __init__(self, n):
        self.n = "time_" + n

    def __enter__(self):
        self.t1 = time.time()

    def __exit__(self, type, value, traceback):
        Logger.CURRENT.name2val[self.n] = Logger.CURRENT.name2val.get(self.n, 0.0) + time.time() - self.t1


# ================================================================
# Backend
# ================================================================

class Logger(object):
    DEFAULT = None  # A logger with no output files, logs to the terminal only
    CURRENT = None  # Current logger being used by the free functions above

    def __init__(self, dir, output_formats):
        self.name2val = OrderedDict()
        self.level = INFO
        self.dir = dir
        self.output_formats = output_formats

    # Logging API, forwarded
    # ----------------------------------------
    def logkv(self, key, val):
        self.name2val[key] = val

    def dumpkvs(self):
        if self.level == DISABLED: return
        for fmt in self.output_formats:
            if isinstance(fmt, KVWriter):
                fmt.writekvs(self.name2val)
        self.name2val.clear()

    def log(self, *args, level=INFO):
        if self.level <= level:
            self._do_log(args)

    # Configuration
    # ----------------------------------------
    def set_level(self, level):
        self.level = level

    def get_dir(self):
        return self.dir

    def close(self):
        for fmt in self.output_formats:
            fmt.close()

    # Misc
    # ----------------------------------------
    def _do_log(self, args):
        for fmt in self.output_formats:
            if isinstance(fmt, SeqWriter):
                fmt.writeseq(map(str, args))

    def save_manifest(self, manifest, encoder=None):
        if not self.dir:
            return None
        file_name = osp.join(self.dir, 'manifest.json')
        with open(file_name, 'w') as f:
            json.dump(manifest, f, indent=2, sort_keys=True, cls=encoder)
        return file_name

Logger.DEFAULT = Logger.CURRENT = Logger(dir=None, output_formats=[HumanOutputFormat(sys.stderr)])


def configure(dir=None, format_strs=None, stem='progress', level=INFO):
    """
    Args:
        dir (str): output directory, defaults to $PLCP_RADAR_LOGDIR or a fresh temporary directory
        format_strs (list): any of 'stdout', 'log', 'csv', 'json'
        stem (str): file name stem of the csv and json outputs
        level (int): logging threshold
    """
    if dir is None:
        dir = os.getenv('PLCP_RADAR_LOGDIR')
    if dir is None:
        dir = osp.join(tempfile.gettempdir(),
            datetime.datetime.now().strftime("plcp-radar-%Y-%m-%d-%H-%M-%S-%f"))
    assert isinstance(dir, str)
    os.makedirs(dir, exist_ok=True)

    if format_strs is None:
        strs = os.getenv('PLCP_RADAR_LOG_FORMAT')
        format_strs = strs.split(',') if strs is not None else LOG_OUTPUT_FORMATS

    output_formats = [make_output_format(f, dir, stem) for f in format_strs]

    Logger.CURRENT = Logger(dir=dir, output_formats=output_formats)
    Logger.CURRENT.set_level(level)
    log('Logging to %s' % dir)


def reset():
    if Logger.CURRENT is not Logger.DEFAULT:
        Logger.CURRENT.close()
        Logger.CURRENT = Logger.DEFAULT


class scoped_configure(object):
    def __init__(self, dir=None, format_strs=None, stem='progress', level=INFO):
        self.dir = dir
        self.format_strs = format_strs
        self.stem = stem
        self.level = level
        self.prevlogger = None

    def __enter__(self):
        self.prevlogger = Logger.CURRENT
        configure(dir=self.dir, format_strs=self.format_strs, stem=self.stem, level=self.level)
        return Logger.CURRENT

    def __exit__(self, *args):
        Logger.CURRENT.close()
        Logger.CURRENT = self.prevlogger
