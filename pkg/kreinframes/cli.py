"""
Author: kreinframes contributors
Date: 2026-10-18 13:52:37
LastEditTime: 2026-10-18 13:52:37
Description: Command line front end running one scenario per call
FilePath: /kreinframes/kreinframes/cli.py
"""

import collections
import contextlib
import copy
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import click
import numpy as np
import yaml
from click.core import ParameterSource
from codetiming import Timer

from kreinframes import DEFINITIONS, SCENARIOS, TOLERANCES, __version__
from kreinframes.frame_ops import applicable_formulas, certify, hilbert_frame_bounds, residual_table
from kreinframes.frame_source import FrameFile, NeutralDemo, neutral_demo_arg, write_frame_file
from kreinframes.kf_utils import KreinFrameError, random_vectors, relative_error
from kreinframes.krein_core import is_hypermaximal_neutral
from kreinframes.l2_model import L2Example, l2_example_arg
from kreinframes.q_frames import (
    FRAME_RECIPES,
    QOperator,
    study_to_frame,
    transport_to_hilbert_frame,
    transport_to_jframe,
    truncation_study,
)
from kreinframes.reports import write_report, write_table

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NEGATIVE = 2

scenario_arg = {
    "scenario": "certify",
    # frame file, needed by certify, reconstruct and transport
    "input": None,
    "out": "kreinframes_out",
    "seed": 0,
    # relative tolerance of A = B, None for tight_tol from the settings
    "tol_cert": None,
    "tol_recon": TOLERANCES["recon_tol"],
    "sizes": [2, 4, 8, 16],
    # None means q_k = k / 4
    "q_schedule": None,
    "definition": "def13",
    "probes": 16,
    "recipe": "orthonormal",
    "parallel": False,
    "l2": dict(l2_example_arg),
    "neutral": dict(neutral_demo_arg),
}


class OperationError(KreinFrameError):
    """An error raised inside a named operation of a scenario"""

    def __init__(self, operation, error):
        super().__init__(f"{operation}: {error}")
        self.operation = operation


@contextlib.contextmanager
def _operation(name):
    try:
        yield
    except OperationError:
        raise
    except (KreinFrameError, ValueError, ArithmeticError, np.linalg.LinAlgError, OSError) as e:
        raise OperationError(name, e) from e


@dataclass
class ScenarioConfig:
    """Everything one run needs; built from scenario_arg, a YAML file and flags"""

    scenario: str
    out: str
    seed: int
    tol_recon: float
    definition: str
    probes: int
    recipe: str
    parallel: bool
    sizes: list
    input: Optional[str] = None
    tol_cert: Optional[float] = None
    q_schedule: Optional[list] = None
    l2: dict = field(default_factory=lambda: dict(l2_example_arg))
    neutral: dict = field(default_factory=lambda: dict(neutral_demo_arg))

    @classmethod
    def from_sources(cls, config_path=None, overrides=None):
        """defaults < config file < explicitly given flags"""
        values = copy.deepcopy(scenario_arg)
        if config_path is not None:
            with open(config_path, "r") as file:
                from_file = yaml.safe_load(file) or {}
            if not isinstance(from_file, dict):
                raise ValueError(f"config file {config_path} must hold a mapping")
            unknown = set(from_file) - set(values)
            if unknown:
                raise ValueError(
                    f"Unknown key(s) in config: {sorted(unknown)}; known keys: {list(values)}"
                )
            for key in ("l2", "neutral"):
                if key in from_file:
                    from_file[key] = {**values[key], **(from_file[key] or {})}
            values.update(from_file)
        values.update(overrides or {})
        config = cls(**values)
        config.validate()
        return config

    def validate(self):
        if self.scenario not in SCENARIOS:
            raise ValueError(f"scenario must be one of {SCENARIOS}, got {self.scenario}")
        if self.definition not in DEFINITIONS:
            raise ValueError(f"definition must be one of {DEFINITIONS}, got {self.definition}")
        if self.recipe not in FRAME_RECIPES:
            raise ValueError(f"recipe must be one of {list(FRAME_RECIPES)}, got {self.recipe}")
        if self.scenario in ("certify", "reconstruct", "transport") and not self.input:
            raise ValueError(f"scenario {self.scenario} needs --input")
        if self.scenario == "transport" and not self.q_schedule:
            raise ValueError("scenario transport needs --q-schedule")
        if self.probes < 1:
            raise ValueError(f"probes must be positive, got {self.probes}")


def _run_certify(config, out):
    with _operation("read_frame_file"):
        source = FrameFile(config.input)
    with _operation("split_family"):
        family = source.read_family()
    with _operation("certify"):
        cert = certify(family, config.definition, tight_tol=config.tol_cert)
    report = collections.OrderedDict(
        scenario="certify",
        input=config.input,
        certificate=cert.to_report(),
    )
    write_report(out / "certificate.yml", report)
    return EXIT_OK if cert.holds else EXIT_NEGATIVE


def _run_reconstruct(config, out):
    with _operation("read_frame_file"):
        source = FrameFile(config.input)
    with _operation("split_family"):
        family = source.read_family()
    with _operation("certify"):
        cert = certify(family, config.definition, tight_tol=config.tol_cert)
        cert13 = cert if config.definition == "def13" else certify(
            family, "def13", tight_tol=config.tol_cert
        )
        formulas = applicable_formulas(family, cert13)
    probes = random_vectors(np.random.default_rng(config.seed), family.dim, config.probes)
    with _operation("reconstruct"):
        table = residual_table(family, probes, formulas)
    write_table(out / "residuals.csv", table)

    worst = table.groupby("formula", sort=False)["residual"].max()
    report = collections.OrderedDict(
        scenario="reconstruct",
        input=config.input,
        seed=config.seed,
        probes=config.probes,
        formulas=formulas,
        max_residual={name: float(value) for name, value in worst.items()},
        tol_recon=config.tol_recon,
        certificate=cert.to_report(),
    )
    write_report(out / "certificate.yml", report)
    if not cert.holds or not formulas:
        return EXIT_NEGATIVE
    largest = float(table["residual"].max())
    if largest > config.tol_recon:
        LOGGER.warning("reconstruction residual %.3e exceeds %.3e", largest, config.tol_recon)
        return EXIT_NEGATIVE
    return EXIT_OK


def _run_transport(config, out):
    with _operation("read_frame_file"):
        source = FrameFile(config.input)
        space = source.read_space()
        g = source.read_vectors()
    with _operation("QOperator.from_parameters"):
        q = QOperator.from_parameters(space, config.q_schedule)
    with _operation("transport_to_jframe"):
        family = transport_to_jframe(q, g)
    with _operation("certify"):
        cert = certify(family, config.definition, tight_tol=config.tol_cert)
    with _operation("transport_to_hilbert_frame"):
        back = transport_to_hilbert_frame(family, q)
    roundtrip = relative_error(back, g)
    before = hilbert_frame_bounds(g)
    write_frame_file(out / "jframe.txt", space.J, family.vectors, comment="exp(-Q/2) g_n")

    report = collections.OrderedDict(
        scenario="transport",
        input=config.input,
        q_schedule=list(config.q_schedule),
        hilbert_bounds=list(before),
        jframe_bounds=list(cert.bounds_def13),
        bounds_gap=[abs(a - b) for a, b in zip(before, cert.bounds_def13)],
        roundtrip_residual=roundtrip,
        certificate=cert.to_report(),
    )
    write_report(out / "certificate.yml", report)
    if not cert.holds or roundtrip > config.tol_recon:
        return EXIT_NEGATIVE
    return EXIT_OK


def _run_l2_example(config, out):
    with _operation("build_example_frame"):
        example = L2Example(config.l2)
    with _operation("certify"):
        cert = example.certify(config.definition)
    table = example.gram_table()
    write_table(out / "l2_gram.csv", table)
    write_frame_file(
        out / "l2_family.txt",
        example.space.J,
        example.family.vectors,
        comment="exp(-x/2) g_n in sqrt(weight) coordinates",
    )
    example.cache_xrdataset(out / "l2_samples.nc")

    offdiag = float(table["offdiag_max"].max())
    diag_error = float(table["diag_error"].max())
    report = collections.OrderedDict(
        scenario="l2_example",
        source=example.source_description,
        offdiag_max=offdiag,
        diag_error_max=diag_error,
        certificate=cert.to_report(),
    )
    write_report(out / "certificate.yml", report)
    quad_tol = TOLERANCES["quad_tol"]
    if not cert.holds or offdiag > quad_tol or diag_error > quad_tol:
        return EXIT_NEGATIVE
    return EXIT_OK


def _run_truncation_study(config, out):
    sizes = [int(m) for m in config.sizes]
    schedule = config.q_schedule
    if not schedule:
        schedule = [0.25 * k for k in range(1, max(sizes) + 1)]
    with _operation("truncation_study"):
        study = truncation_study(schedule, sizes, config.recipe, parallel=config.parallel)
    write_table(out / "study.csv", study_to_frame(study))
    meta = collections.OrderedDict(
        scenario="truncation_study",
        q_schedule=list(schedule),
        recipe=config.recipe,
        sizes=sizes,
        metrics={name: study[name].attrs["metric"] for name in study.data_vars},
        uncertified_sizes=[int(m) for m in study["size"].values[~study["holds_def13"].values]],
    )
    write_report(out / "study_meta.yml", meta)
    return EXIT_OK


def _run_neutral_demo(config, out):
    demo = NeutralDemo(config.neutral)
    with _operation("split_family"):
        family = demo.read_family()
    with _operation("certify"):
        cert = certify(family, config.definition, tight_tol=config.tol_cert)
        cert11 = certify(family, "def11", tight_tol=config.tol_cert)
    write_frame_file(
        out / "neutral_family.txt",
        demo.space.J,
        family.vectors,
        comment="f_n and J f_n, f_n spanning a hypermaximal neutral subspace",
    )
    report = collections.OrderedDict(
        scenario="neutral_demo",
        source=demo.source_description,
        hypermaximal_neutral=is_hypermaximal_neutral(demo.space, demo.neutral_subspace),
        def11=collections.OrderedDict(
            holds=cert11.is_frame_def11,
            A=cert11.bounds_def11[0],
            B=cert11.bounds_def11[1],
            tight=cert11.tight,
        ),
        certificate=cert.to_report(),
    )
    write_report(out / "certificate.yml", report)
    return EXIT_OK if cert.holds else EXIT_NEGATIVE


_SCENARIO_RUNNERS = {
    "certify": _run_certify,
    "reconstruct": _run_reconstruct,
    "transport": _run_transport,
    "l2_example": _run_l2_example,
    "truncation_study": _run_truncation_study,
    "neutral_demo": _run_neutral_demo,
}


def run(config: ScenarioConfig) -> int:
    """Run one scenario and write its artifacts into config.out

    Returns
    -------
    int
        0 on success, 2 when the family fails the requested definition or a
        residual exceeds its tolerance, 1 on errors
    """
    out = Path(config.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        with Timer(name=config.scenario, text="{name} finished in {:.3f} s", logger=LOGGER.info):
            code = _SCENARIO_RUNNERS[config.scenario](config, out)
    except OperationError as e:
        LOGGER.error("scenario %s failed in %s", config.scenario, e)
        return EXIT_ERROR
    except (KreinFrameError, ValueError, ArithmeticError, np.linalg.LinAlgError, OSError) as e:
        LOGGER.error("scenario %s failed: %s", config.scenario, e)
        return EXIT_ERROR
    LOGGER.info("scenario %s exit status %d", config.scenario, code)
    return code


def _split_list(text, cast):
    return [cast(item) for item in text.replace(" ", "").split(",") if item]


# click parameter name -> ScenarioConfig field
_FLAG_FIELDS = {
    "scenario": "scenario",
    "input_path": "input",
    "out": "out",
    "seed": "seed",
    "tol_cert": "tol_cert",
    "tol_recon": "tol_recon",
    "sizes": "sizes",
    "q_schedule": "q_schedule",
    "definition": "definition",
    "probes": "probes",
}


@click.command(context_settings={"help_option_names": ["-h", "--help"]})
@click.option(
    "--scenario",
    default=scenario_arg["scenario"],
    show_default=True,
    help=f"One of {', '.join(SCENARIOS)}.",
)
@click.option("--input", "input_path", default=None, help="Frame file (dim / J / vectors format).")
@click.option("--out", default=scenario_arg["out"], show_default=True, help="Output directory.")
@click.option("--seed", type=int, default=scenario_arg["seed"], show_default=True, help="Seed of the random probes.")
@click.option("--tol-cert", type=float, default=None, help="Relative tolerance for A = B.")
@click.option("--tol-recon", type=float, default=scenario_arg["tol_recon"], show_default=True, help="Largest accepted reconstruction residual.")
@click.option("--sizes", default=None, help="Comma-separated study sizes, e.g. 2,4,8.")
@click.option("--q-schedule", default=None, help="Comma-separated block parameters q_1,q_2,...")
@click.option("--config", "config_path", default=None, help="YAML file with scenario settings; flags win over it.")
@click.option("--definition", default=scenario_arg["definition"], show_default=True, help=f"One of {', '.join(DEFINITIONS)}.")
@click.option("--probes", type=int, default=scenario_arg["probes"], show_default=True, help="Number of random probe vectors.")
@click.option("--verbose", "-v", is_flag=True, help="Log at DEBUG level.")
@click.version_option(__version__)
def main(config_path, verbose, **flags):
    """Certify, reconstruct and construct frames in finite-dimensional Krein spaces."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    ctx = click.get_current_context()
    overrides = {}
    try:
        for param, key in _FLAG_FIELDS.items():
            if ctx.get_parameter_source(param) != ParameterSource.COMMANDLINE:
                continue
            value = flags[param]
            if param == "sizes":
                value = _split_list(value, int)
            elif param == "q_schedule":
                value = _split_list(value, float)
            overrides[key] = value
        config = ScenarioConfig.from_sources(config_path, overrides)
    except (ValueError, TypeError, OSError, yaml.YAMLError) as e:
        LOGGER.error("invalid configuration: %s", e)
        ctx.exit(EXIT_ERROR)
    ctx.exit(run(config))


if __name__ == "__main__":
    main()
