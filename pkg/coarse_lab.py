import logging
import time
from pathlib import Path
from typing import Optional

import orjson
import typer
from pydantic import ValidationError
from rich.console import Console

from CoarseLab.Config.ExperimentConfig import ExperimentConfig, RunReport
from CoarseLab.Utils import ReportWriter
from CoarseLab.Utils.ConfigReader import ConfigReader
from CoarseLab.Utils.Errors import CoarseLabError
from Engines.BaseEngine import VIOLATED
from Engines.EngineFactory import EngineFactory

logger = logging.getLogger(__name__)
console = Console(stderr=True)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2

app = typer.Typer(help="Desk-scale experiments on word metrics, Hamming embeddings, covers and window functions.",
                  no_args_is_help=True, add_completion=False)


class CoarseLabApp:
    """
    Runs one subcommand on one experiment configuration and packages a RunReport.

    Exit codes: 0 when the command ran, 1 when it ran and found a violation,
    2 when it could not run (invalid config, unknown command, exceeded budgets).
    """
    def run(self, command: str, config: ExperimentConfig) -> RunReport:
        started = time.perf_counter()
        logger.info("running %s", command)
        engine = EngineFactory.create_engine(command, config)
        result, verdict = engine.run(command)
        report = RunReport(command=command, config=config.echo(), duration_seconds=time.perf_counter() - started,
                           result=result, verdict=verdict,
                           exit_code=EXIT_VIOLATION if verdict == VIOLATED else EXIT_OK)
        logger.info("%s finished with verdict %s in %.3fs", command, verdict, report.duration_seconds)
        return report


def load_config(path: Path, overrides: dict) -> ExperimentConfig:
    """Read a JSON experiment config and apply command-line overrides on top of it."""
    data = orjson.loads(path.read_bytes())
    for key, value in overrides.items():
        if value is None:
            continue
        if key == "family":
            data.setdefault("function", {})["family"] = value
        else:
            data[key] = value
    return ExperimentConfig.model_validate(data)


def parse_json(value: Optional[str]):
    return None if value is None else orjson.loads(value)


def execute(command: str, config_path: Path, overrides: dict) -> int:
    try:
        config = load_config(config_path, overrides)
        report = CoarseLabApp().run(command, config)
    except (ValidationError, CoarseLabError, ValueError, IndexError, OSError, orjson.JSONDecodeError) as e:
        logging.error(f"Error running {command}: {e}")
        console.print(f"[red]error[/red] {command}: {e}")
        return EXIT_USAGE
    payload = report.model_dump(mode="json")
    if config.output:
        ReportWriter.write_json(config.output, payload)
    typer.echo(ReportWriter.dumps(payload).decode("utf-8"), nl=False)
    colour = "red" if report.exit_code else "green"
    console.print(f"[{colour}]{command}[/{colour}] verdict={report.verdict} exit={report.exit_code}")
    return report.exit_code


def register(command: str, help_text: str):
    def subcommand(
        config: Path = typer.Option(..., "--config", exists=True, dir_okay=False, help="Experiment config (JSON)."),
        x: Optional[str] = typer.Option(None, "--x", help="Element as JSON."),
        y: Optional[str] = typer.Option(None, "--y", help="Element as JSON."),
        n: Optional[int] = typer.Option(None, "--n", help="Ball radius."),
        centers: Optional[str] = typer.Option(None, "--centers", help="JSON list of elements."),
        points: Optional[str] = typer.Option(None, "--points", help="JSON list of elements."),
        k: Optional[int] = typer.Option(None, "--k", help="Number of centers."),
        max_r: Optional[int] = typer.Option(None, "--max-r", help="Distance search bound."),
        sequences: Optional[str] = typer.Option(None, "--sequences", help="JSON list of element lists."),
        sequence: Optional[str] = typer.Option(None, "--sequence", help="JSON list of elements."),
        target_len: Optional[int] = typer.Option(None, "--target-len"),
        scan_limit: Optional[int] = typer.Option(None, "--scan-limit"),
        verify_support: Optional[int] = typer.Option(None, "--verify-support"),
        pairs: Optional[int] = typer.Option(None, "--pairs"),
        exhaustive_support: Optional[int] = typer.Option(None, "--exhaustive-support"),
        r: Optional[int] = typer.Option(None, "--r", help="Separation or oscillation scale."),
        r_list: Optional[str] = typer.Option(None, "--r-list", help="JSON list of scales."),
        D: Optional[int] = typer.Option(None, "--D", help="Boundedness radius."),
        candidates: Optional[str] = typer.Option(None, "--candidates", help="singletons, balls or bricks."),
        candidate_size: Optional[int] = typer.Option(None, "--candidate-size"),
        candidate_step: Optional[int] = typer.Option(None, "--candidate-step"),
        budget: Optional[int] = typer.Option(None, "--budget", help="Branch-and-bound node budget."),
        family: Optional[str] = typer.Option(None, "--family", help="Built-in function family."),
        interior_margin: Optional[int] = typer.Option(None, "--interior-margin"),
        seed: Optional[int] = typer.Option(None, "--seed"),
        output: Optional[str] = typer.Option(None, "--output", help="Write the report here as well."),
        csv_output: Optional[str] = typer.Option(None, "--csv-output", help="CSV path for dim-profile."),
    ):
        try:
            overrides = {
                "x": parse_json(x), "y": parse_json(y), "n": n, "centers": parse_json(centers),
                "points": parse_json(points), "k": k, "max_r": max_r, "sequences": parse_json(sequences),
                "sequence": parse_json(sequence), "target_len": target_len, "scan_limit": scan_limit,
                "verify_support": verify_support, "pairs": pairs, "exhaustive_support": exhaustive_support,
                "r": r, "r_list": parse_json(r_list), "D": D, "candidates": candidates,
                "candidate_size": candidate_size, "candidate_step": candidate_step, "budget": budget,
                "family": family, "interior_margin": interior_margin, "seed": seed, "output": output,
                "csv_output": csv_output,
            }
        except orjson.JSONDecodeError as e:
            console.print(f"[red]error[/red] malformed JSON flag: {e}")
            raise typer.Exit(EXIT_USAGE)
        raise typer.Exit(execute(command, config, overrides))

    app.command(command, help=help_text)(subcommand)


COMMANDS = {
    "dist": "Word distance between --x and --y.",
    "ball": "Ball of radius --n around --x.",
    "ideal-ball": "F + A_n for --centers and --n.",
    "cover-radius": "Least radius covering --points with --k balls.",
    "merge": "Round-robin merge of --sequences.",
    "embed": "Greedy FS-strict subsequence with optional isometry verification.",
    "verify-embed": "Check that the finite sums of --sequence form an isometric Hamming cube.",
    "fs-check": "Subset-sum distinctness and signed-sum condition of --sequence.",
    "hamming-check": "Sampled check of the canonical bijection between a Boolean window and Hamming space.",
    "cover-verify": "Verify a covering witness.",
    "cover-greedy": "Greedy covering witness.",
    "min-colors": "Exact minimum class count by branch and bound.",
    "dim-profile": "Scale-dimension profile over --r-list.",
    "osc": "Oscillation table of a window function.",
    "so-index": "Eventual-constancy index of a binary window function.",
    "classify": "Staged evidence for the four large-scale function classes.",
}

for _name, _help in COMMANDS.items():
    register(_name, _help)


@app.callback()
def main():
    settings = ConfigReader()
    logging.basicConfig(filename=settings.get("Runtime", "log_file", "coarse_lab.log"),
                        level=getattr(logging, str(settings.get("Runtime", "log_level", "INFO")).upper(), logging.INFO))


if __name__ == "__main__":
    app()
