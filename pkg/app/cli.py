# app/cli.py
"""
배치 실행 진입점

    python -m app.cli count --a 1 --b 1 --p 3 --q 3,5,7
    python -m app.cli closure --a 2 --b 2 --p 3 --N 6 --format csv --output closure.csv

종료 코드: 0 통과, 1 검사 실패, 2 설정/사용법 오류, 3 예산 초과
데이터는 stdout(또는 --output), 진행 로그는 stderr 로만 나간다.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from app import __version__
from app.algebra.errors import BudgetExceeded, LabError
from app.services.archive import save_run
from app.services.campaigns import run_campaign
from app.services.reports import render
from app.services.settings import FORMATS, SUBCOMMANDS, ConfigError, build_config

logger = logging.getLogger("app.cli")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

_HELP = {
    "count": "strata counts and degree interpolation",
    "closure": "witness search over comparable label pairs",
    "tangent": "smooth-locus table",
    "char2": "form classification and parity report (p = 2)",
    "weights": "criterion/oracle sweep",
    "hasse": "Dieudonne datum search and poset consistency",
    "cmindex": "CM index set and its order",
    "chart": "equation-variety counts",
}


def _common_options() -> argparse.ArgumentParser:
    # 기본값은 모두 None: 설정 파일/환경 변수 값을 덮어쓰지 않게
    parent = argparse.ArgumentParser(add_help=False)
    g = parent.add_argument_group("model")
    g.add_argument("--a", type=int)
    g.add_argument("--b", type=int)
    g.add_argument("--p", type=int, help="characteristic")
    g.add_argument("--f", type=int, help="field degree, q = p^f")
    g.add_argument("--case", help="odd | char2-case1 | char2-case2")
    g.add_argument("--n", type=int, help="signature for hasse (1..3)")
    g.add_argument("--N", type=int, help="truncation order of R_N")
    g.add_argument("--q", dest="q_list", help="comma separated field sizes, e.g. 3,5,7")
    g.add_argument("--legs", help="CM shape as a:b pairs, e.g. 1:1,1:2")
    g.add_argument("--range", dest="weight_range", type=int, help="weight entries in [-range, range]")

    r = parent.add_argument_group("run")
    r.add_argument("--seed", type=int)
    r.add_argument("--budget", type=int, help="enumeration budget (points)")
    r.add_argument("--samples", type=int, help="random families (closure) or datum attempts (hasse)")
    r.add_argument("--config", dest="config_file", help="key=value config file")
    r.add_argument("--output", "-o", help="write the report here instead of stdout")
    r.add_argument("--format", dest="fmt", choices=FORMATS)
    r.add_argument("--archive", action="store_true", default=None, help="store the report in the run archive")
    r.add_argument("--verbose", "-v", action="store_true")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="splitlab", description="special fiber verification campaigns")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    parent = _common_options()
    for name in SUBCOMMANDS:
        sub.add_parser(name, parents=[parent], help=_HELP[name])
    return parser


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
        logger.info("report written to %s", output)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    overrides = vars(args).copy()
    subcommand = overrides.pop("subcommand")
    config_file = overrides.pop("config_file")
    overrides.pop("verbose")

    try:
        cfg = build_config(subcommand, config_file, **overrides)
        report = run_campaign(cfg)
    except ConfigError as e:
        logger.error("config error: %s", e)
        return EXIT_USAGE
    except BudgetExceeded as e:
        logger.error("budget exceeded: %s", e)
        return EXIT_BUDGET
    except LabError as e:
        logger.error("%s aborted: %s", subcommand, e)
        return EXIT_USAGE

    _emit(render(report, cfg.fmt), cfg.output)
    if cfg.archive:
        save_run(report)

    if report["failures"]:
        for f in report["failures"]:
            logger.warning("FAILED %s: %s", f["id"], f["detail"])
        return EXIT_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
