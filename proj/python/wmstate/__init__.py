"""Weak-measurement pointer state preparation in a truncated Fock space.

Settings are the same keys the command-line tool accepts in a config file
(g, alpha, epsilon, pointer, beta, eta, signal_cutoff, grid_nx, ...). Values
may be numbers, strings or booleans.
"""

import json

from . import _core
from ._core import (
    ConvergenceError,
    DegenerateError,
    DimensionMismatchError,
    Error,
    IndexError,
    IoError,
    ModeMismatchError,
    NumericError,
    OrthogonalPostselectionError,
    ParameterError,
    RangeError,
    TruncationError,
    UnknownFigureError,
    UsageError,
    coherent_state,
    exact_weak_values,
    fidelity,
    figure_ids,
    fock,
    min_squeezing,
    minimal_cutoff,
    photon_stats,
    postselection_probability,
    spac,
    spasv,
    squeezed_vacuum,
    squeezing,
    vacuum,
    weak_values,
)

__version__ = _core.__version__


def _settings(overrides):
    out = {}
    for key, value in overrides.items():
        if isinstance(value, bool):
            value = "true" if value else "false"
        elif isinstance(value, (list, tuple)):
            value = ", ".join(repr(v) for v in value)
        elif isinstance(value, float):
            value = repr(value)
        out[key] = str(value)
    return out


def conditional_state(exact=False, **settings):
    """Postselected pointer state. Returns a dict with the amplitudes,
    p_zeroth, p_model and the two expansion coefficients."""
    return _core.conditional_state(_settings(settings), exact)


def snr_ratio(beta=1.0, exact=False, **settings):
    return _core.snr_ratio(_settings(settings), beta, exact)


def wigner(state, **settings):
    """(x, p, W) on the grid_* box, W[i, j] = W(x[i] + i p[j])."""
    return _core.wigner(state, _settings(settings))


def figure(fig_id, **settings):
    return _core.figure(fig_id, _settings(settings))


def run_figure(fig_id, out_dir, **settings):
    return _core.run_figure(fig_id, str(out_dir), _settings(settings))


def sweep(var, range, metrics, **settings):
    if isinstance(metrics, str):
        metrics = [metrics]
    return _core.sweep(var, range, list(metrics), _settings(settings))


def deviations(**settings):
    return json.loads(_core.deviations_json(_settings(settings)))
