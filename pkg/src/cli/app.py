"""
命令行入口：python -m src.cli <command>

退出码：0 全部通过，2 分析完成但有判定失败，1 运行错误（错误类名写到 stderr）。
"""

import os
from collections.abc import Callable
from pathlib import Path
from typing import Any

import numpy as np
import typer
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator
from rich.console import Console
from rich.table import Table

from src.cascade import (
    cascade_scaling,
    check_translate_orthonormality,
    cross_translate_overlap,
    mother_wavelet,
    refinement_residual,
)
from src.config import config
from src.exceptions import NonSummableError, SeedSpecError, SeedWaveError
from src.filters import FilterSequence, Provenance, RelevanceTolerances, extract_filter, relevance_report
from src.ortho import default_ont_grid, f_coefficients, ont_filter, ont_seed, symbol
from src.overlap import check_monc, check_onc, overlap_lattice
from src.qmcheck import KernelFactory, KernelModel, KernelVariant, QuadSettings, crosscheck, hermite_state
from src.seedfn import LatticeParams, SeedFunction, SeedPresetFactory, resolve_seed, seed_digest
from src.utils import logger
from src.utils.report_io import provenance, write_json, write_table

app = typer.Typer(help="Wavelet filters from seed functions", no_args_is_help=True, add_completion=False)
console = Console(stderr=True)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_ANALYTIC_FAIL = 2

# ont_seed 忽略的 f 项（相对最大 |f|）
ONT_SEED_REL_CUT = 1e-14


class RunConfig(BaseModel):
    """一次命令运行的全部设置（默认值来自全局 config）"""

    model_config = ConfigDict(frozen=True)

    command: str
    seed: str | None = None
    out_dir: Path
    fmt: str = Field(default="csv", pattern="^(csv|json)$")

    lattice_radius: int = Field(default_factory=lambda: config.lattice_radius, ge=1)
    n_range: int = Field(default_factory=lambda: config.n_range, ge=1)
    onc_tol: float = Field(default_factory=lambda: config.onc_tol, gt=0)
    r1_tol: float = Field(default_factory=lambda: config.r1_tol, gt=0)
    r1_lmax: int = Field(default_factory=lambda: config.r1_lmax, ge=1)
    r3_tol: float = Field(default_factory=lambda: config.r3_tol, gt=0)
    r4_grid: int = Field(default_factory=lambda: config.r4_grid, ge=2)
    r4_delta: float = Field(default_factory=lambda: config.r4_delta, gt=0)
    symbol_grid: int = Field(default_factory=lambda: config.symbol_grid, ge=2)
    singular_rel_eps: float = Field(default_factory=lambda: config.singular_rel_eps, gt=0)
    ont_seed_span: float = Field(default_factory=lambda: config.ont_seed_span, gt=0)
    ont_seed_step: float = Field(default_factory=lambda: config.ont_seed_step, gt=0)
    cascade_iterations: int = Field(default_factory=lambda: config.cascade_iterations, ge=1)
    cascade_level: int = Field(default_factory=lambda: config.cascade_level, ge=1)
    ortho_kmax: int = Field(default_factory=lambda: config.ortho_kmax, ge=1)
    ortho_tol: float = Field(default_factory=lambda: config.ortho_tol, gt=0)
    quad_radius: float = Field(default_factory=lambda: config.quad_radius, gt=0)
    quad_nodes: int = Field(default_factory=lambda: config.quad_nodes, ge=3)
    quad_tail_tol: float = Field(default_factory=lambda: config.quad_tail_tol, gt=0)
    crosscheck_tol: float = Field(default_factory=lambda: config.crosscheck_tol, gt=0)
    crosscheck_lmax: int = Field(default_factory=lambda: config.crosscheck_lmax, ge=0)

    @field_validator("out_dir")
    @classmethod
    def _writable(cls, value: Path) -> Path:
        value.mkdir(parents=True, exist_ok=True)
        if not os.access(value, os.W_OK):
            raise ValueError(f"output directory {value} is not writable")
        return value

    def tolerances(self) -> RelevanceTolerances:
        return RelevanceTolerances.from_config(
            config,
            r1_lmax=self.r1_lmax,
            r1_tol=self.r1_tol,
            r3_tol=self.r3_tol,
            r4_grid=self.r4_grid,
            r4_delta=self.r4_delta,
            seed_n_range=self.n_range,
            seed_lattice=self.lattice_radius,
        )

    def quad(self) -> QuadSettings:
        return QuadSettings(radius=self.quad_radius, nodes=self.quad_nodes, tail_tol=self.quad_tail_tol)

    def settings(self) -> dict[str, Any]:
        return self.model_dump(exclude={"command", "seed", "out_dir", "fmt"})


def _run_config(command: str, **options) -> RunConfig:
    return RunConfig(command=command, **{k: v for k, v in options.items() if v is not None})


def _execute(body: Callable[[], int]):
    """运行命令体并把异常映射到退出码"""
    try:
        code = body()
    except (SeedWaveError, ValidationError, ValueError) as e:
        console.print(f"{type(e).__name__}: {e}", style="bold red", markup=False, highlight=False)
        raise typer.Exit(code=EXIT_ERROR) from e
    raise typer.Exit(code=code)


def _seed_provenance(run: RunConfig, seed: SeedFunction) -> dict[str, Any]:
    return provenance(run.command, run.seed, seed_digest(seed), **run.settings())


def _summary(title: str, rows: list[tuple[str, str]]):
    table = Table(title=title, show_header=False)
    for key, value in rows:
        table.add_row(key, value)
    console.print(table)


def _verdict(ok: bool) -> str:
    return "[green]pass[/green]" if ok else "[red]fail[/red]"


def _onc_block(lat, tol: float) -> dict[str, Any]:
    onc_ok, onc_residual = check_onc(lat, tol)
    block: dict[str, Any] = {"onc": {"holds": onc_ok, "residual": onc_residual}}
    try:
        monc_ok, sigma = check_monc(lat, tol)
        block["monc"] = {"holds": monc_ok, "sigma": sigma}
    except NonSummableError as e:
        logger.warning(f"MONC check skipped: {e}")
        block["monc"] = {"holds": False, "sigma": None, "error": str(e)}
    return block


# 通用选项
SeedOption = typer.Option(..., "--seed", help="种子：JSON 文件路径或 preset:NAME")
OutOption = typer.Option(Path("reports"), "--out", help="输出目录")
FormatOption = typer.Option("csv", "--format", help="表格输出格式 csv|json")


@app.command()
def analyze(
    seed: str = SeedOption,
    out: Path = OutOption,
    l_max: int | None = typer.Option(None, "--l-max", help="格点截断半径 L"),
    n_range: int | None = typer.Option(None, "--n-range", help="滤波器窗口 |n| <= n_range"),
    tol_onc: float | None = typer.Option(None, "--tol-onc", help="ONC / MONC 容差"),
    tol_r1: float | None = typer.Option(None, "--tol-r1", help="(r1) 容差"),
    tol_r3: float | None = typer.Option(None, "--tol-r3", help="(r3) 容差"),
    grid: int | None = typer.Option(None, "--grid", help="(r4) 频率网格点数"),
    fmt: str = FormatOption,
):
    """重叠格点、ONC / MONC、滤波器系数与相关性条件"""

    def body() -> int:
        run = _run_config(
            "analyze",
            seed=seed,
            out_dir=out,
            fmt=fmt,
            lattice_radius=l_max,
            n_range=n_range,
            onc_tol=tol_onc,
            r1_tol=tol_r1,
            r3_tol=tol_r3,
            r4_grid=grid,
        )
        h = resolve_seed(seed)
        lat = overlap_lattice(h, LatticeParams(L=run.lattice_radius))
        f = extract_filter(h, run.n_range)
        report = relevance_report(f, h, run.tolerances())

        write_table(run.out_dir / "overlap", ["l1", "l2", "re", "im", "abs"], lat.to_rows(), run.fmt)
        write_table(run.out_dir / "filter", ["n", "re", "im"], f.to_rows(), run.fmt)
        data = {"provenance": _seed_provenance(run, h), **_onc_block(lat, run.onc_tol), **report.to_dict()}
        write_json(run.out_dir / "relevance.json", data)

        _summary(
            f"analyze {seed}",
            [("ONC", _verdict(data["onc"]["holds"]))] + [(k, _verdict(v)) for k, v in report.verdicts.items()],
        )
        return EXIT_OK if report.all_pass else EXIT_ANALYTIC_FAIL

    _execute(body)


@app.command()
def ont(
    seed: str = SeedOption,
    out: Path = OutOption,
    l_max: int | None = typer.Option(None, "--l-max", help="格点截断半径 L"),
    n_range: int | None = typer.Option(None, "--n-range", help="滤波器窗口 |n| <= n_range"),
    grid: int | None = typer.Option(None, "--grid", help="符号网格 n1 = n2"),
    tol_onc: float | None = typer.Option(None, "--tol-onc", help="ONC 容差"),
    tol_r1: float | None = typer.Option(None, "--tol-r1", help="(r1) 容差"),
    tol_singular: float | None = typer.Option(None, "--tol-singular", help="奇异判定的相对阈值"),
    seed_span: float | None = typer.Option(None, "--seed-span", help="正交化种子输出网格的半宽"),
    seed_step: float | None = typer.Option(None, "--seed-step", help="正交化种子输出网格的步长"),
    fmt: str = FormatOption,
):
    """正交化：f 系数、H_n、正交化后的种子及其相关性条件"""

    def body() -> int:
        run = _run_config(
            "ont",
            seed=seed,
            out_dir=out,
            fmt=fmt,
            lattice_radius=l_max,
            n_range=n_range,
            symbol_grid=grid,
            onc_tol=tol_onc,
            r1_tol=tol_r1,
            singular_rel_eps=tol_singular,
            ont_seed_span=seed_span,
            ont_seed_step=seed_step,
        )
        h = resolve_seed(seed)
        lat = overlap_lattice(h, LatticeParams(L=run.lattice_radius))
        sym = symbol(lat, run.symbol_grid, run.symbol_grid)
        coeffs = f_coefficients(sym, run.singular_rel_eps)
        big_h = ont_filter(h, lat, sym, run.n_range, run.singular_rel_eps)
        seed_grid = default_ont_grid(run.ont_seed_span, run.ont_seed_step)
        corrected = ont_seed(h, coeffs, seed_grid, rel_cut=ONT_SEED_REL_CUT)
        report = relevance_report(big_h, corrected, run.tolerances())

        notes = []
        onc_ok, _ = check_onc(lat, run.onc_tol)
        if onc_ok:
            plain = extract_filter(h, run.n_range)
            deviation = float(np.max(np.abs(big_h.coeffs - plain.coeffs)))
            notes.append(f"seed satisfies the ONC: H_n = h_n (max deviation {deviation!r})")

        write_json(
            run.out_dir / "f_coefficients.json",
            {
                "provenance": _seed_provenance(run, h),
                "symbol": sym.metadata(run.singular_rel_eps),
                "coefficients": coeffs.to_rows(),
            },
        )
        write_table(run.out_dir / "ont_filter", ["n", "re", "im"], big_h.to_rows(), run.fmt)
        seed_rows = [[float(x), float(v.real), float(v.imag)] for x, v in zip(seed_grid, corrected.samples)]
        write_table(run.out_dir / "ont_seed", ["x", "re", "im"], seed_rows, run.fmt)
        data = {
            "provenance": _seed_provenance(run, h),
            "onc": onc_ok,
            "ont_seed": {"span": run.ont_seed_span, "step": run.ont_seed_step, "nodes": int(seed_grid.size)},
            **report.to_dict(),
        }
        if notes:
            data["notes"] = data.get("notes", []) + notes
        write_json(run.out_dir / "ont_relevance.json", data)

        _summary(
            f"ont {seed}",
            [("symbol min", f"{sym.min_value:.6g}"), ("r1 residual", f"{report.r1_residual:.3e}")]
            + [(k, _verdict(v)) for k, v in report.verdicts.items()],
        )
        return EXIT_OK if report.all_pass else EXIT_ANALYTIC_FAIL

    _execute(body)


def _parse_coeffs(text: str) -> list[complex]:
    try:
        return [complex(item.strip().replace(" ", "")) for item in text.split(",") if item.strip()]
    except ValueError as e:
        raise SeedSpecError(f"Cannot parse filter coefficients {text!r}: {e}") from e


def _load_filter_csv(path: Path) -> FilterSequence:
    """读取 n, re, im 格式的 CSV（按截断窗口处理）"""
    try:
        rows = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    except (OSError, ValueError) as e:
        raise SeedSpecError(f"Cannot read filter CSV {path}: {e}") from e
    if rows.shape[1] != 3 or rows.shape[0] == 0:
        raise SeedSpecError(f"Filter CSV {path} must have columns n, re, im")
    n = rows[:, 0].astype(int)
    if np.any(np.diff(n) != 1):
        raise SeedSpecError(f"Filter CSV {path} must list consecutive indices")
    return FilterSequence.truncated(int(n[0]), rows[:, 1] + 1j * rows[:, 2], Provenance.MANUAL)


def _resolve_filter(seed: str | None, coeffs: str | None, n_min: int, filter_csv: Path | None, n_range: int):
    sources = [s for s in (seed, coeffs, filter_csv) if s is not None]
    if len(sources) != 1:
        raise SeedSpecError("Give exactly one of --seed, --coeffs or --filter")
    if coeffs is not None:
        return FilterSequence(n_min, _parse_coeffs(coeffs)), None
    if filter_csv is not None:
        return _load_filter_csv(filter_csv), None
    h = resolve_seed(seed)
    return extract_filter(h, n_range), h


@app.command()
def cascade(
    seed: str | None = typer.Option(None, "--seed", help="种子：JSON 文件路径或 preset:NAME"),
    coeffs: str | None = typer.Option(None, "--coeffs", help="逗号分隔的系数，如 0.7071,0.7071"),
    n_min: int = typer.Option(0, "--n-min", help="--coeffs 第一个系数的下标"),
    filter_csv: Path | None = typer.Option(None, "--filter", help="n, re, im 格式的滤波器 CSV"),
    out: Path = OutOption,
    n_range: int | None = typer.Option(None, "--n-range", help="从种子提取时的窗口"),
    iterations: int | None = typer.Option(None, "--iterations", help="级联迭代次数"),
    level: int | None = typer.Option(None, "--level", help="二进网格分辨率 2^-level"),
    k_max: int | None = typer.Option(None, "--k-max", help="平移正交性检验的最大 |k|"),
    tol_ortho: float | None = typer.Option(None, "--tol-ortho", help="平移正交性容差"),
    fmt: str = FormatOption,
):
    """级联算法：φ、ψ 的采样与平移正交性"""

    def body() -> int:
        source = seed or (f"coeffs:{coeffs}@{n_min}" if coeffs is not None else None) or str(filter_csv)
        run = _run_config(
            "cascade",
            seed=source,
            out_dir=out,
            fmt=fmt,
            n_range=n_range,
            cascade_iterations=iterations,
            cascade_level=level,
            ortho_kmax=k_max,
            ortho_tol=tol_ortho,
        )
        f, h = _resolve_filter(seed, coeffs, n_min, filter_csv, run.n_range)
        result = cascade_scaling(f, run.cascade_iterations, run.cascade_level)
        psi = mother_wavelet(f, result.phi)
        phi = result.phi.translated()

        phi_ok, phi_residual = check_translate_orthonormality(phi, run.ortho_kmax, run.ortho_tol)
        psi_ok, psi_residual = check_translate_orthonormality(psi, run.ortho_kmax, run.ortho_tol)
        cross = max(abs(cross_translate_overlap(psi, phi, k)) for k in range(-run.ortho_kmax, run.ortho_kmax + 1))
        cross_ok = cross <= run.ortho_tol

        write_table(run.out_dir / "phi", ["x", "re", "im"], phi.to_rows(), run.fmt)
        write_table(run.out_dir / "psi", ["x", "re", "im"], psi.to_rows(), run.fmt)
        integral = phi.integral()
        write_json(
            run.out_dir / "orthonormality.json",
            {
                "provenance": provenance(
                    run.command, run.seed, seed_digest(h) if h is not None else None, **run.settings()
                ),
                "filter": {"n_min": f.n_min, "n_max": f.n_max, "shift": result.shift},
                "cascade": {
                    "iterations": result.iterations,
                    "level": run.cascade_level,
                    "last_step": result.residual,
                    "refinement_residual": refinement_residual(f, result.phi),
                },
                "phi": {
                    "integral": {"re": integral.real, "im": integral.imag},
                    "translates": {"residual": phi_residual, "pass": phi_ok},
                },
                "psi": {
                    "norm_sq": psi.norm_sq(),
                    "translates": {"residual": psi_residual, "pass": psi_ok},
                    "phi_cross": {"max": cross, "pass": cross_ok},
                },
                "k_max": run.ortho_kmax,
            },
        )

        _summary(
            "cascade",
            [
                ("refinement residual", f"{result.residual:.3e}"),
                ("phi translates", _verdict(phi_ok)),
                ("psi translates", _verdict(psi_ok)),
                ("psi vs phi", _verdict(cross_ok)),
            ],
        )
        return EXIT_OK if phi_ok and psi_ok and cross_ok else EXIT_ANALYTIC_FAIL

    _execute(body)


@app.command(name="crosscheck")
def crosscheck_cmd(
    seed: str = typer.Option("preset:gaussian", "--seed", help="种子：JSON 文件路径或 preset:NAME"),
    out: Path = OutOption,
    l_max: int | None = typer.Option(None, "--l-max", help="最大 |l1|, |l2|"),
    model: list[str] | None = typer.Option(None, "--model", help="核模型 ex1|ex2|ex3，可重复；默认全部"),
    hermite: bool = typer.Option(False, "--hermite", help="同时用一阶 Hermite 函数作为 φ 运行"),
    radius: float | None = typer.Option(None, "--radius", help="积分截断半径"),
    grid: int | None = typer.Option(None, "--grid", help="每个方向的积分节点数"),
    tol: float | None = typer.Option(None, "--tol", help="误差容差"),
):
    """二维重叠与一维公式的交叉验证（输出 JSON）"""

    def body() -> int:
        run = _run_config(
            "crosscheck",
            seed=seed,
            out_dir=out,
            fmt="json",
            crosscheck_lmax=l_max,
            quad_radius=radius,
            quad_nodes=grid,
            crosscheck_tol=tol,
        )
        h = resolve_seed(seed)
        quad = run.quad()
        variants = [KernelVariant(m) for m in (model or KernelFactory.get_available_variants())]
        models = [KernelModel(v) for v in variants]
        if hermite:
            models += [KernelModel(v, hermite_state(1, quad.grid())) for v in variants]

        rows = crosscheck(models, h, run.crosscheck_lmax, quad)
        max_error = max(row["error"] for row in rows)
        passed = max_error <= run.crosscheck_tol
        write_json(
            run.out_dir / "crosscheck.json",
            {
                "provenance": _seed_provenance(run, h),
                "max_error": max_error,
                "pass": passed,
                "rows": rows,
            },
        )
        _summary("crosscheck", [("max |error|", f"{max_error:.3e}"), ("verdict", _verdict(passed))])
        return EXIT_OK if passed else EXIT_ANALYTIC_FAIL

    _execute(body)


@app.command()
def presets():
    """列出内置种子预设"""
    table = Table(title="Seed presets")
    table.add_column("name", style="cyan")
    table.add_column("description")
    for name, description in SeedPresetFactory.get_available_presets().items():
        table.add_row(f"preset:{name}", description)
    Console().print(table)


def main():
    app()


if __name__ == "__main__":
    main()
