"""
Δ-可整除码工具的命令行入口

子命令: expand, feasible, check, census, gamma, verify-claim, tables, claims
退出码: 0 成功, 1 数学上的否定结论, 2 用法错误, 3 预算耗尽
"""

import json
import logging
import sys
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional

import configargparse

try:
    from .census import (CATALOG, SUITES, Budget, CacheCorruptError, CensusEngine, CensusKey, CensusStore,
                         UnknownClaimError, VerdictStatus, compare_tables, counts_csv, resolve_gamma,
                         stats_csv, stats_table, verify_claim)
    from .codes.matrix import MatrixError, format_matrix, parse_matrix, to_multiset
    from .codes.weights import BudgetExceededError, weight_distribution
    from .gf.field import FieldError, get_field
    from .lengths.expansion import is_length_feasible, power_exponent, sqr_adic_expansion, ward_reduce
    from .pg.geometry import GeometryError
    from .pg.multiset import gamma1, is_divisible, max_divisor
    from .utils.config import CACHE_DIR_ENV, ConfigError, get_config_manager
    from .utils.naming import NamingManager
except ImportError:
    from census import (CATALOG, SUITES, Budget, CacheCorruptError, CensusEngine, CensusKey, CensusStore,
                        UnknownClaimError, VerdictStatus, compare_tables, counts_csv, resolve_gamma,
                        stats_csv, stats_table, verify_claim)
    from codes.matrix import MatrixError, format_matrix, parse_matrix, to_multiset
    from codes.weights import BudgetExceededError, weight_distribution
    from gf.field import FieldError, get_field
    from lengths.expansion import is_length_feasible, power_exponent, sqr_adic_expansion, ward_reduce
    from pg.geometry import GeometryError
    from pg.multiset import gamma1, is_divisible, max_divisor
    from utils.config import CACHE_DIR_ENV, ConfigError, get_config_manager
    from utils.naming import NamingManager

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class UsageError(Exception):
    """参数组合不合法"""


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise UsageError(message)


def _validate_common(args) -> None:
    _require(args.threads is None or args.threads >= 1, f"--threads 必须 >= 1: {args.threads}")
    _require(args.budget_nodes is None or args.budget_nodes >= 0,
             f"--budget-nodes 必须 >= 0: {args.budget_nodes}")
    _require(args.budget_seconds is None or args.budget_seconds >= 0,
             f"--budget-seconds 必须 >= 0: {args.budget_seconds}")
    delta = getattr(args, "delta", None)
    _require(delta is None or delta >= 1, f"--delta 必须 >= 1: {delta}")


@dataclass
class Outcome:
    code: int
    data: Any
    csv: Optional[str] = None
    text: Optional[str] = None


# ----------------------------------------------------------------------
# 参数解析
# ----------------------------------------------------------------------
def _common_parser() -> configargparse.ArgumentParser:
    common = configargparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default="./config.json", help="配置文件路径")
    common.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
                        help="日志级别（覆盖配置文件）")
    common.add_argument("--format", choices=["json", "csv", "text"], help="输出格式")
    common.add_argument("--out", help="输出文件；缺省写到标准输出")
    common.add_argument("--threads", type=int, help="普查线程数（缺省为机器并行度）")
    common.add_argument("--cache-dir", env_var=CACHE_DIR_ENV, help="普查缓存目录")
    common.add_argument("--budget-nodes", type=int, help="普查节点预算")
    common.add_argument("--budget-seconds", type=float, help="普查时间预算（秒）")
    return common


def build_parser() -> configargparse.ArgumentParser:
    common = _common_parser()
    parser = configargparse.ArgumentParser(prog="divcodes", description="Δ-可整除码的分析、普查与分类")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="S_q(r)-adic 展开")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("feasible", parents=[common], help="长度 n 的 Δ-可整除码是否存在")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--delta", type=int)
    p.add_argument("--r", type=int, help="Δ = q^r 的简写")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("check", parents=[common], help="检查生成矩阵文件")
    p.add_argument("--file", required=True, help="矩阵文件，'-' 表示标准输入")
    p.add_argument("--delta", type=int)

    p = sub.add_parser("census", parents=[common], help="同构剔除的穷举普查")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, help="只普查该维数；缺省为 1..n")
    p.add_argument("--max-gamma", type=int, help="γ_1 上限")
    p.add_argument("--stats", action="store_true", help="输出组合数据表而不是计数")

    p = sub.add_parser("gamma", parents=[common], help="Γ_q(Δ,n) 与见证")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("verify-claim", parents=[common], help="穷举验证分类命题")
    p.add_argument("--claim", required=True)

    p = sub.add_parser("tables", parents=[common], help="附录计数表")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.add_argument("--compare", action="store_true", help="重新普查并与表格比对")
    p.add_argument("--n", type=int, help="比对时的最大 n")

    sub.add_parser("claims", parents=[common], help="列出命题目录")
    return parser


# ----------------------------------------------------------------------
# 子命令
# ----------------------------------------------------------------------
class Context:
    """一次调用的配置、命名与普查资源"""

    def __init__(self, args):
        self.args = args
        self.config_manager = get_config_manager(args.config)
        self.naming = NamingManager(self.config_manager)
        self.census_config = self.config_manager.get_census_config()
        self._store: Optional[CensusStore] = None

    @property
    def threads(self) -> Optional[int]:
        return self.args.threads or self.census_config.get("threads")

    def budget(self) -> Budget:
        nodes = self.args.budget_nodes if self.args.budget_nodes is not None else self.census_config["budget_nodes"]
        seconds = (self.args.budget_seconds if self.args.budget_seconds is not None
                   else self.census_config["budget_seconds"])
        return Budget(nodes=nodes, seconds=seconds, mitm_rows=self.census_config["mitm_row_limit"])

    def witness_budget(self) -> Budget:
        gamma_config = self.config_manager.get_gamma_config()
        return Budget(nodes=gamma_config["witness_search_nodes"], seconds=gamma_config["witness_search_seconds"],
                      mitm_rows=self.census_config["mitm_row_limit"])

    def store(self) -> CensusStore:
        if self._store is None:
            self._store = CensusStore(self.naming.cache_dir(self.args.cache_dir))
        return self._store

    def write_witness(self, text: str) -> Optional[str]:
        if not self.args.out:
            return None
        path = self.naming.witness_path(self.args.out)
        NamingManager.ensure_directory(path)
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
        logger.info(f"见证矩阵已写入: {path}")
        return path


def _cmd_expand(ctx: Context) -> Outcome:
    a = ctx.args
    get_field(a.q)
    if a.r < 1:
        raise UsageError("需要 r >= 1")
    return Outcome(EXIT_OK, sqr_adic_expansion(a.n, a.q, a.r).to_json())


def _cmd_feasible(ctx: Context) -> Outcome:
    a = ctx.args
    if (a.delta is None) == (a.r is None):
        raise UsageError("--delta 与 --r 必须且只能给出一个")
    _require(a.r is None or a.r >= 0, f"--r 必须 >= 0: {a.r}")
    get_field(a.q)
    delta = a.delta if a.delta is not None else a.q ** a.r
    p_power, d = ward_reduce(a.q, delta)
    r, rest = power_exponent(a.q, p_power)
    data: Dict[str, Any] = {"q": a.q, "delta": delta, "n": a.n}
    if a.n % d:
        data.update(feasible=False, reason="ward")
    elif rest == 1:
        cert = sqr_adic_expansion(a.n // d, a.q, r)
        data.update(feasible=cert.feasible, certificate=cert.to_json())
    elif is_length_feasible(a.n // d, a.q, r + 1):
        data.update(feasible=True, reason="q^(r+1)")
    elif r and not is_length_feasible(a.n // d, a.q, r):
        data.update(feasible=False, reason="q^r")
    else:
        # q^r 与 q^(r+1) 之间的情形需要普查
        data.update(feasible=None, reason="undetermined")
        return Outcome(EXIT_BUDGET, data)
    return Outcome(EXIT_OK if data["feasible"] else EXIT_NEGATIVE, data)


def _read_matrix(path: str):
    if path == "-":
        return parse_matrix(sys.stdin.read())
    with open(path, "r", encoding="utf-8") as f:
        return parse_matrix(f.read())


def _cmd_check(ctx: Context) -> Outcome:
    a = ctx.args
    g = _read_matrix(a.file)
    m = to_multiset(g)
    cap = ctx.config_manager.get_codes_config()["weight_enumeration_cap"]
    data: Dict[str, Any] = {
        "q": g.q,
        "k": g.k,
        "n": m.cardinality,
        "columns": g.n,
        "gamma1": gamma1(m),
        "max_divisor": max_divisor(m),
    }
    try:
        weights = weight_distribution(g, cap)
        data["weights"] = {str(w): c for w, c in sorted(weights.as_dict().items())}
    except BudgetExceededError as e:
        logger.warning(f"跳过重量分布: {e}")
    code = EXIT_OK
    if a.delta is not None:
        data["delta"] = a.delta
        data["divisible"] = is_divisible(m, a.delta)
        code = EXIT_OK if data["divisible"] else EXIT_NEGATIVE
    return Outcome(code, data)


def _census_records(ctx: Context) -> List:
    a = ctx.args
    get_field(a.q)
    _require(a.n >= 1, f"--n 必须 >= 1: {a.n}")
    _require(a.k is None or 1 <= a.k <= a.n, f"要求 1 <= k <= n: k={a.k}, n={a.n}")
    _require(a.max_gamma is None or a.max_gamma >= 1, f"--max-gamma 必须 >= 1: {a.max_gamma}")
    engine = CensusEngine(ctx.budget(), ctx.threads, ctx.store())
    ks = [a.k] if a.k is not None else range(1, a.n + 1)
    return [engine.enumerate(CensusKey(a.q, a.delta, a.n, k, a.max_gamma)) for k in ks]


def _cmd_census(ctx: Context) -> Outcome:
    records = _census_records(ctx)
    partial = any(r.partial for r in records)
    code = EXIT_BUDGET if partial else EXIT_OK
    if ctx.args.stats:
        rows = stats_table(records)
        data = {"partial": partial, "rows": [
            {"n": r.n, "k": r.k, "delta": r.delta, "gamma1": r.gamma_1, "lambda": list(r.lam),
             "spectrum": {str(i): c for i, c in r.spectrum}} for r in rows]}
        return Outcome(code, data, csv=stats_csv(rows))
    cells = [(r.key.n, r.key.k, r.count) for r in records]
    text = "\n".join(f"{r.key.describe()}: {r.count}" + (" (部分结果)" if r.partial else "") for r in records)
    data = {"partial": partial, "counts": [{"n": n, "k": k, "count": c} for n, k, c in cells]}
    return Outcome(code, data, csv=counts_csv(cells), text=text + "\n")


def _cmd_gamma(ctx: Context) -> Outcome:
    a = ctx.args
    get_field(a.q)
    gamma_config = ctx.config_manager.get_gamma_config()
    result = resolve_gamma(a.q, a.delta, a.n, ctx.budget(), ctx.witness_budget(), ctx.threads, ctx.store(),
                           witness_search=gamma_config["witness_search"])
    data = result.to_json()
    if result.witness is not None:
        witness_text = format_matrix(result.witness)
        data["witness"] = witness_text
        path = ctx.write_witness(witness_text)
        if path:
            data["witness_file"] = path
    if result.partial or result.witness_status == "budget":
        code = EXIT_BUDGET
    elif result.is_infinite:
        code = EXIT_NEGATIVE
    else:
        code = EXIT_OK
    return Outcome(code, data, text=f"Γ_{a.q}({a.delta},{a.n}) = {result.value_text()}\n")


def _cmd_verify_claim(ctx: Context) -> Outcome:
    verdict = verify_claim(ctx.args.claim, ctx.budget(), ctx.threads, ctx.store())
    data = verdict.to_json()
    if verdict.counterexample is not None:
        data["counterexample"] = format_matrix(verdict.counterexample)
        ctx.write_witness(data["counterexample"])
    code = {VerdictStatus.PASS: EXIT_OK, VerdictStatus.FAIL: EXIT_NEGATIVE,
            VerdictStatus.BUDGET: EXIT_BUDGET}[verdict.status]
    return Outcome(code, data, text=f"{verdict.claim_id}: {verdict.status.value} ({verdict.checked})\n")


def _cmd_tables(ctx: Context) -> Outcome:
    a = ctx.args
    suite = SUITES[a.suite]
    if not a.compare:
        cells = suite.cells()
        return Outcome(EXIT_OK, {"suite": suite.name, "q": suite.q, "delta": suite.delta,
                                 "complete": suite.complete,
                                 "counts": [{"n": n, "k": k, "count": c} for n, k, c in cells]},
                       csv=counts_csv(cells))

    _require(a.n is None or a.n >= 1, f"--n 必须 >= 1: {a.n}")
    limit = a.n if a.n is not None else suite.max_n
    engine = CensusEngine(ctx.budget(), ctx.threads, ctx.store())
    computed = {}
    for n in sorted(suite.rows):
        if n > limit:
            continue
        for k in range(1, len(suite.rows[n]) + 1):
            record = engine.enumerate(CensusKey(suite.q, suite.delta, n, k))
            computed[(n, k)] = (record.count, record.partial)
    discrepancies = compare_tables(suite, computed)
    partial = any(p for _, p in computed.values())
    cells = [(n, k, c) for (n, k), (c, _) in sorted(computed.items()) if c]
    data = {
        "suite": suite.name,
        "partial": partial,
        "counts": [{"n": n, "k": k, "count": c} for n, k, c in cells],
        "discrepancies": [d.describe() for d in discrepancies],
    }
    if any(not d.partial for d in discrepancies):
        code = EXIT_NEGATIVE
    elif partial:
        code = EXIT_BUDGET
    else:
        code = EXIT_OK
    return Outcome(code, data, csv=counts_csv(cells))


def _cmd_claims(ctx: Context) -> Outcome:
    rows = [{"id": c.claim_id, "delta": c.delta, "n": c.n, "gamma_min": c.gamma_min,
             "gamma_max": c.gamma_max, "description": c.description} for c in CATALOG.values()]
    text = "".join(f"{r['id']}: {r['description']}\n" for r in rows)
    return Outcome(EXIT_OK, {"claims": rows}, text=text)


COMMANDS: Dict[str, Callable[[Context], Outcome]] = {
    "expand": _cmd_expand,
    "feasible": _cmd_feasible,
    "check": _cmd_check,
    "census": _cmd_census,
    "gamma": _cmd_gamma,
    "verify-claim": _cmd_verify_claim,
    "tables": _cmd_tables,
    "claims": _cmd_claims,
}


# ----------------------------------------------------------------------
# 输出
# ----------------------------------------------------------------------
def _text_of(data: Any) -> str:
    if isinstance(data, dict):
        return "".join(f"{key}: {json.dumps(value, ensure_ascii=False, sort_keys=True)}\n"
                       for key, value in sorted(data.items()))
    return f"{data}\n"


def render(outcome: Outcome, fmt: str) -> str:
    if fmt == "csv":
        if outcome.csv is None:
            raise UsageError("该子命令不支持 csv 输出")
        return outcome.csv
    if fmt == "text":
        return outcome.text if outcome.text is not None else _text_of(outcome.data)
    return json.dumps(outcome.data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _configure_logging(ctx: Context) -> None:
    log_config = ctx.config_manager.get_logging_config()
    logging.basicConfig(
        level=ctx.args.log_level or log_config["level"],
        format=log_config["format"],
        datefmt=log_config["datefmt"],
    )


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    ctx = Context(args)
    _configure_logging(ctx)
    fmt = args.format or ctx.config_manager.get_output_config()["default_format"]
    logger.debug(f"子命令: {args.command}")

    try:
        _validate_common(args)
        outcome = COMMANDS[args.command](ctx)
        output = render(outcome, fmt)
    except (UsageError, UnknownClaimError, FieldError, GeometryError, MatrixError, ConfigError, OSError) as e:
        parser.print_usage(sys.stderr)
        logger.error(f"用法错误: {e}")
        return EXIT_USAGE
    except CacheCorruptError as e:
        logger.error(f"缓存损坏: {e}")
        return EXIT_USAGE

    if args.out:
        NamingManager.ensure_directory(args.out)
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(output)
        logger.info(f"结果已写入: {args.out}")
    else:
        sys.stdout.write(output)
    return outcome.code


def main() -> None:
    sys.exit(run())


if __name__ == '__main__':
    main()
