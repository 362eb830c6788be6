"""
Author: kreinframes contributors
Date: 2026-10-18 09:12:40
LastEditTime: 2026-10-18 09:12:40
Description: settings and constants for kreinframes
FilePath: /kreinframes/kreinframes/__init__.py
"""

import copy
import logging
import os
from pathlib import Path

import yaml

__author__ = """kreinframes contributors"""
__version__ = '0.1.0'

LOGGER = logging.getLogger(__name__)

SETTING_FILE = os.path.join(Path.home(), "krein_setting.yml")

DEFAULT_SETTING = {
    "tolerances": {
        # J = J^T and J^2 = I, relative
        "tol_sym": 1e-12,
        # smallest/largest singular value for a basis to count as independent
        "rank_tol": 1e-10,
        # |lambda| < neutral_tol * ||G_J|| counts as zero in classify_subspace,
        # |[f, f]| <= neutral_tol * ||f||^2 makes a frame member neutral
        "neutral_tol": 1e-10,
        # sigma_min(S) >= invert_tol * sigma_max(S) for 0 in rho(S)
        "invert_tol": 1e-10,
        "tight_tol": 1e-8,
        "orth_tol": 1e-10,
        "recon_tol": 1e-8,
        "anticomm_tol": 1e-12,
        "block_tol": 1e-10,
        "angle_tol": 1e-8,
        "complete_tol": 1e-10,
        "quad_tol": 1e-8,
        # exp(710) overflows a double
        "exp_limit": 700.0,
    },
    "local_data_path": {
        "cache": os.path.join(Path.home(), ".cache", "kreinframes"),
    },
}


def read_setting(setting_path):
    """Read the YAML setting file and check its structure

    A missing file is not an error: the built-in defaults are used instead.
    Keys present in the file replace the defaults one by one.

    Parameters
    ----------
    setting_path : str
        path of the YAML file

    Returns
    -------
    dict
        the merged setting
    """
    setting = copy.deepcopy(DEFAULT_SETTING)
    if not os.path.exists(setting_path):
        LOGGER.info("No setting file at %s, using default tolerances", setting_path)
        return setting

    with open(setting_path, "r") as file:
        user_setting = yaml.safe_load(file)

    example_setting = (
        "tolerances:\n"
        "  rank_tol: 1.0e-10\n"
        "  tight_tol: 1.0e-8\n"
        "local_data_path:\n"
        "  cache: '/home/me/.cache/kreinframes'\n"
    )

    if user_setting is None:
        raise ValueError(
            f"Configuration file is empty or has invalid format.\n\nExample configuration:\n{example_setting}"
        )

    # every top-level key must be known, and so must every subkey
    expected_structure = {
        key: list(value.keys()) for key, value in DEFAULT_SETTING.items()
    }

    try:
        for key, subkeys in user_setting.items():
            if key not in expected_structure:
                raise KeyError(f"Unknown key in config: {key}")
            if not isinstance(subkeys, dict):
                raise KeyError(f"'{key}' must be a mapping")
            for subkey, value in subkeys.items():
                if subkey not in expected_structure[key]:
                    raise KeyError(f"Unknown subkey '{subkey}' in '{key}'")
                setting[key][subkey] = value
    except KeyError as e:
        raise ValueError(
            f"Incorrect configuration format: {e}\n\nExample configuration:\n{example_setting}"
        ) from e

    for name, value in setting["tolerances"].items():
        setting["tolerances"][name] = float(value)
    return setting


SETTING = read_setting(SETTING_FILE)

# set some constants for kreinframes
TOLERANCES = SETTING["tolerances"]
CACHE_DIR = Path(SETTING["local_data_path"]["cache"])

DEFINITIONS = ["def11", "def12", "def13"]
RECONSTRUCTION_FORMULAS = [
    "eq33_dual",
    "eq33_coeff",
    "eq36_hilbert1",
    "tight",
    "tilde_dual",
    "eq43_biorthogonal",
]
FUNCTIONS = [
    "exp_half",
    "exp_minus_half",
    "exp_full",
    "cosh_half",
    "sinh_half",
    "tanh_half",
]
BASIS_KINDS = ["legendre_even_odd", "fourier"]
SCENARIOS = [
    "certify",
    "reconstruct",
    "transport",
    "l2_example",
    "truncation_study",
    "neutral_demo",
]

from .kf_utils import *
from .krein_core import *
from .frame_ops import *
from .q_frames import *
from .l2_model import *
from .frame_source import *
from .reports import *
