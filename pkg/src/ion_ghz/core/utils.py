# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
# Author: Markus Ritschel
# eMail:  git@markusritschel.de
# Date:   2024-03-03
# %%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%%
#
import functools
import json
import logging
from pathlib import Path
import numpy as np
import pandas as pd


log = logging.getLogger(__name__)

CSV_FLOAT_FORMAT = "%.12g"


def add_provenance(func):
    """
    A decorator that makes sure the output directory exists and logs what was
    written, together with the provenance (config hash and seed) of the run.

    Parameters
    ----------
    func : callable
        The function to be decorated. Its first two arguments must be the
        object and the output path.

    Returns
    -------
    callable
        The decorated function.
    """
    @functools.wraps(func)
    def wrapper(obj, path, *args, **kwargs):
        prov = kwargs.get('provenance') or BunchDict()
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        result = func(obj, path, *args, **kwargs)
        obj_type = get_obj_type_str(obj)
        log.info(f"Saved {obj_type} to {path} (config {str(prov.get('config_hash', 'n/a'))[:12]}, "
                 f"seed {prov.get('seed', 'n/a')})")
        return result

    return wrapper


class BunchDict(dict):
    """BunchDict is a subclass of the built-in dict class that allows
    accessing dictionary keys as attributes.

    Example
    -------
    >>> bd = BunchDict()
    >>> bd['seed'] = 7
    >>> print(bd.seed)
    7
    >>> bd.seed = 8
    >>> print(bd['seed'])
    8
    """

    def __getattr__(self, attr):
        try:
            return self[attr]
        except KeyError:
            raise AttributeError(attr) from None

    def __setattr__(self, attr, value):
        self[attr] = value


def get_obj_type_str(obj):
    """Transform the output of `type` to a simplified descriptor:

    Turns
        "<class 'pandas.core.frame.DataFrame'>"
    into "DataFrame"

    Example
    -------
    >>> get_obj_type_str(pd.DataFrame())
    'DataFrame'
    """
    return str(type(obj)).split("'")[1].split('.')[-1]


def provenance(config=None, seed=None):
    """Collect what is needed to reproduce an output file.

    Parameters
    ----------
    config : RunConfig, optional
        Contributes its hash and seed.
    seed : int, optional
        Overrides the seed of `config`.

    Example
    -------
    >>> sorted(provenance(seed=3))
    ['config_hash', 'package_version', 'seed']
    """
    from .. import __version__
    meta = BunchDict()
    meta['package_version'] = __version__
    meta['config_hash'] = config.config_hash() if config is not None else None
    meta['seed'] = seed if seed is not None else getattr(config, 'seed', None)
    return meta


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, float) and not np.isfinite(obj):
        return str(obj)
    return obj


@add_provenance
@functools.singledispatch
def save(obj, path, *args, **kwargs):
    """Save the given object and log its provenance.

    This is a dispatchable function. That is, there are several
    implementations for different types of objects (:class:`pandas.DataFrame`
    as CSV, :class:`dict` as JSON report, :class:`ion_ghz.circuit.Circuit`
    as circuit text). In case there is no implementation, the function will
    throw a :class:`NotImplementedError`.

    Parameters
    ----------
    obj : object
        The object to be saved.
    path : str or pathlib.Path
        The path to which the object will be saved.
    provenance : dict, optional
        Output of :func:`provenance`; embedded into JSON reports.

    Raises
    ------
    NotImplementedError
        If the according function is not dispatched.

    Examples
    --------
    >>> save(pd.DataFrame({'x': [0.1]}), '/tmp/table.csv')          # doctest: +SKIP
    >>> save(object(), '/tmp/myobj')                                  # doctest: +SKIP
    NotImplementedError: No implementation of `save` found for object of type <class 'object'>.
    """
    raise NotImplementedError(f"No implementation of `save` found for object of type {type(obj)}.")


@save.register(pd.DataFrame)
def _(df, path, *args, **kwargs):
    kwargs.pop('provenance', None)
    kwargs.setdefault('index', False)
    kwargs.setdefault('float_format', CSV_FLOAT_FORMAT)
    kwargs.setdefault('lineterminator', '\n')
    df.to_csv(path, *args, **kwargs)


@save.register(dict)
def _(report, path, *args, **kwargs):
    prov = kwargs.pop('provenance', None)
    content = dict(report)
    if prov is not None:
        content['provenance'] = dict(prov)
    Path(path).write_text(json.dumps(_jsonable(content), sort_keys=True, indent=2) + "\n")
