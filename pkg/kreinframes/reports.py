"""
Author: kreinframes contributors
Date: 2026-10-18 13:30:12
LastEditTime: 2026-10-18 13:30:12
Description: writing reports (YAML) and tables (CSV)
FilePath: /kreinframes/kreinframes/reports.py
"""

import logging
import os

import pandas as pd
import yaml

from kreinframes.kf_utils import to_builtin

__all__ = ["write_report", "read_report", "write_table", "CSV_FLOAT_FORMAT"]

LOGGER = logging.getLogger(__name__)

# 17 significant digits round-trip a double
CSV_FLOAT_FORMAT = "%.16e"


def _ensure_parent(path):
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)


def write_report(path, report):
    """Dump a (nested) mapping as a YAML document, keys in insertion order"""
    _ensure_parent(path)
    with open(path, "w", encoding="utf-8") as file:
        yaml.safe_dump(to_builtin(report), file, sort_keys=False, allow_unicode=True)
    LOGGER.info("report written to %s", path)
    return path


def read_report(path) -> dict:
    with open(path, "r", encoding="utf-8") as file:
        return yaml.safe_load(file)


def write_table(path, frame: pd.DataFrame):
    """CSV with header row and 17 significant digits, no index column"""
    _ensure_parent(path)
    frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT)
    LOGGER.info("table with %d rows written to %s", len(frame), path)
    return path
