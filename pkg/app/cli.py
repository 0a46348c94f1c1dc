# app/cli.py
"""
명령행 진입점: python -m app.cli <command> ...

출력은 stdout 의 JSON (기본 한 줄, --pretty 면 들여쓰기), 로그는 stderr.

종료 코드:
    0 성공 / 1 검증 실패 / 2 사용법 오류 / 3 입력·검증 오류 / 4 예기치 못한 계산 오류
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from app.core.config import settings
from app.core.exceptions import DegreeError
from app.models.compute import AbelianOp, ComputeOp, ComputeRequest
from app.models.element import DecomposedElementModel, TateElementModel
from app.models.group import GroupInfoResponse, GroupModel
from app.models.verify import CheckName, CheckReportModel, VerifyRequest
from app.services.abelian_service import abelian_service
from app.services.compute_service import compute_service
from app.services.group_service import group_service
from app.services.verify_service import verify_service
from app.utils.fgroup import conjugacy

logger = logging.getLogger("app.cli")

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_COMPUTE = 4

_DECOMPOSED_OPS = {ComputeOp.MHAT, ComputeOp.IOTA}


# ==================== 인자 파싱 ====================

def _degrees(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"차수 목록은 쉼표로 구분한 정수여야 합니다: {text!r}") from exc


def _window(text: str) -> Tuple[int, int]:
    """'3' 은 [-3, 3], '-2,1' 은 [-2, 1]"""
    parts = _degrees(text)
    if len(parts) == 1 and parts[0] >= 0:
        return -parts[0], parts[0]
    if len(parts) == 2 and parts[0] <= parts[1]:
        return parts[0], parts[1]
    raise argparse.ArgumentTypeError(f"window 는 'N' 또는 'lo,hi' 형식입니다: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", default=None, help=f"프리셋 이름 (기본 {settings.default_group})")
    common.add_argument("--table", type=Path, default=None, help="곱셈표 JSON 파일 ({name, order, table})")
    common.add_argument("--field", default=None, help=f"계수체 Q 또는 Fp:p (기본 {settings.default_field}, TATE_DEFAULT_FIELD)")
    common.add_argument("--output", type=Path, default=None, help="JSON 을 파일에 쓴다")

    parser = argparse.ArgumentParser(prog="tate", description="Tate-Hochschild A∞ 엔진")
    parser.add_argument("--pretty", action="store_true", help="들여쓰기한 JSON 출력")
    parser.add_argument("--log-level", default=settings.log_level)
    sub = parser.add_subparsers(dest="command", required=True)
    group = sub.add_parser("group", help="군 정보")
    group_sub = group.add_subparsers(dest="action", required=True)
    info = group_sub.add_parser("info", parents=[common])
    info.add_argument("--preset", default=None, help="--group 의 별칭")
    group_sub.add_parser("list", parents=[common])

    trees = sub.add_parser("trees", help="평면 나무")
    trees_sub = trees.add_subparsers(dest="action", required=True)
    tree_list = trees_sub.add_parser("list", parents=[common])
    tree_list.add_argument("n", type=int)
    tree_signs = trees_sub.add_parser("signs", parents=[common])
    tree_signs.add_argument("n", type=int)
    tree_signs.add_argument("--degrees", type=_degrees, required=True)

    compute = sub.add_parser("compute", help="단일 연산", parents=[common])
    compute.add_argument("op", choices=[op.value for op in ComputeOp])
    compute.add_argument("--input", type=Path, action="append", default=[], help="원소 JSON (여러 번 지정 가능)")
    compute.add_argument("--n", type=int, default=None)
    compute.add_argument("--policy", choices=["koszul", "printed"], default=None)
    compute.add_argument("--m3-sign", choices=["corrected", "uncorrected"], default="corrected")
    compute.add_argument("--per-tree", action="store_true")

    abelian = sub.add_parser("abelian", help="아벨군 닫힌 형태")
    abelian_sub = abelian.add_subparsers(dest="action", required=True)
    table = abelian_sub.add_parser("table", parents=[common])
    table.add_argument("--op", choices=[op.value for op in AbelianOp if op is not AbelianOp.TENSOR], default="m2")
    table.add_argument("--degrees", type=_degrees, required=True)
    table.add_argument("--csv", action="store_true", help="CSV 로 출력")

    verify = sub.add_parser("verify", help="항등식 검사", parents=[common])
    verify.add_argument("check", choices=["all"] + [c.value for c in CheckName])
    verify.add_argument("--window", type=_window, default=None)
    verify.add_argument("--seed", type=int, default=None)
    verify.add_argument("--samples", type=int, default=None)
    verify.add_argument("--levels", type=_degrees, default=None)
    verify.add_argument("--policy", choices=["koszul", "printed"], default=None)
    verify.add_argument("--max-cases", type=int, default=None, help="전수 검사 상한 (TATE_MAX_EXHAUSTIVE_CASES)")

    export = sub.add_parser("export", help="군 / 기저 JSON 내보내기", parents=[common])
    export.add_argument("--degree", type=int, default=None, help="지정하면 그 차수의 𝒟* 와 분해측 기저 목록")

    serve = sub.add_parser("serve", help="HTTP 서버 실행")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


# ==================== 입출력 헬퍼 ====================

def _read_json(path: Path) -> Any:
    with path.open(encoding="utf-8") as fh:
        return json.load(fh)


def _emit(payload: Any, args: argparse.Namespace) -> None:
    text = json.dumps(payload, ensure_ascii=False, indent=2 if args.pretty else None)
    if getattr(args, "output", None):
        args.output.write_text(text + "\n", encoding="utf-8")
        logger.info("결과 저장: %s", args.output)
    else:
        print(text)


def _table_of(args: argparse.Namespace) -> Optional[List[List[int]]]:
    if args.table is None:
        return None
    return GroupModel(**_read_json(args.table)).table


def _group_name(args: argparse.Namespace) -> Optional[str]:
    if args.table is not None:
        return GroupModel(**_read_json(args.table)).name
    return getattr(args, "preset", None) or args.group


def _element_payloads(data: Any) -> List[Dict[str, Any]]:
    """원소 JSON, 원소 목록, compute 응답, compute 요청 형식을 모두 원소 목록으로 푼다"""
    if isinstance(data, list):
        return [item for entry in data for item in _element_payloads(entry)]
    if not isinstance(data, dict):
        raise DegreeError("원소 JSON 은 객체 또는 객체 목록이어야 합니다")
    if "terms" in data and "degree" in data:
        return [data]
    found: List[Dict[str, Any]] = []
    for key in ("elements", "decomposed", "element"):
        value = data.get(key)
        if value:
            found.extend(_element_payloads(value))
    if not found:
        raise DegreeError("입력에서 원소를 찾지 못했습니다 (degree / terms 필요)")
    return found


def _compute_request(args: argparse.Namespace, op: ComputeOp) -> ComputeRequest:
    payloads = [p for path in args.input for p in _element_payloads(_read_json(path))]
    elements: List[TateElementModel] = []
    decomposed: List[DecomposedElementModel] = []
    for payload in payloads:
        is_decomposed = any("class" in term for term in payload.get("terms", [])) or (
            not payload.get("terms") and op in _DECOMPOSED_OPS
        )
        if is_decomposed:
            decomposed.append(DecomposedElementModel(**payload))
        else:
            elements.append(TateElementModel(**payload))
    return ComputeRequest(
        group=_group_name(args),
        table=_table_of(args),
        field=args.field,
        elements=elements,
        decomposed=decomposed,
        n=args.n,
        policy=args.policy,
        m3_sign=args.m3_sign,
        per_tree=args.per_tree,
    )


# ==================== 명령 ====================

def _cmd_group(args: argparse.Namespace) -> int:
    if args.action == "list":
        _emit(group_service.list_presets().model_dump(), args)
        return EXIT_OK
    _emit(group_service.info(_group_name(args), _table_of(args)).model_dump(), args)
    return EXIT_OK


def _cmd_trees(args: argparse.Namespace) -> int:
    if args.action == "list":
        _emit(compute_service.list_trees(args.n).model_dump(), args)
    else:
        _emit(compute_service.tree_signs(args.n, tuple(args.degrees)).model_dump(), args)
    return EXIT_OK


def _cmd_compute(args: argparse.Namespace) -> int:
    op = ComputeOp(args.op)
    response = compute_service.compute(op, _compute_request(args, op))
    _emit(response.model_dump(by_alias=True, exclude_none=True), args)
    return EXIT_OK


def _cmd_abelian(args: argparse.Namespace) -> int:
    response = abelian_service.table(_group_name(args), AbelianOp(args.op), args.degrees, args.field)
    if not args.csv:
        _emit(response.model_dump(), args)
        return EXIT_OK
    lines = ["inputs,output_degree,output_key,coeff"]
    for entry in response.entries:
        inputs = "|".join(" ".join(str(v) for v in key) for key in entry.inputs)
        if not entry.output.terms:
            lines.append(f"{inputs},{entry.output.degree},,0")
        for term in entry.output.terms:
            lines.append(f"{inputs},{entry.output.degree},{' '.join(str(v) for v in term.key)},{term.coeff}")
    text = "\n".join(lines)
    if args.output:
        args.output.write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.max_cases is not None:
        settings.max_exhaustive_cases = args.max_cases
    payload: Dict[str, Any] = {
        "group": _group_name(args),
        "table": _table_of(args),
        "field": args.field,
        "window": args.window,
        "seed": args.seed,
        "samples": args.samples,
        "policy": args.policy,
    }
    if args.levels:
        payload["levels"] = args.levels
    request = VerifyRequest(**payload)
    if args.check == "all":
        summary = verify_service.run_all(request)
        _emit(summary.model_dump(), args)
        return EXIT_OK if summary.passed else EXIT_VERIFY_FAILED
    report = verify_service.run(CheckName(args.check), request)
    _emit(CheckReportModel(**report.to_dict()).model_dump(), args)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def _cmd_export(args: argparse.Namespace) -> int:
    group = group_service.resolve(_group_name(args), _table_of(args))
    payload: Dict[str, Any] = {
        "group": GroupModel.from_group(group).model_dump(),
        "conjugacy": GroupInfoResponse.from_data(conjugacy(group)).model_dump(),
    }
    if args.degree is not None:
        ctx = compute_service.context(group, group_service.field(args.field))
        payload["field"] = ctx.spec.label
        payload["degree"] = args.degree
        payload["tate_basis"] = [list(key) for key in ctx.complex.basis(args.degree)]
        payload["decomposed_basis"] = [
            {"class": key[0], "key": list(key[1:])} for key in ctx.decomposition.target.basis(args.degree)
        ]
    _emit(payload, args)
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("app.main:app", host=args.host, port=args.port, log_level=args.log_level.lower())
    return EXIT_OK


_COMMANDS = {
    "group": _cmd_group,
    "trees": _cmd_trees,
    "compute": _cmd_compute,
    "abelian": _cmd_abelian,
    "verify": _cmd_verify,
    "export": _cmd_export,
    "serve": _cmd_serve,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    logging.basicConfig(
        level=getattr(logging, str(args.log_level).upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        logger.error("입력 오류: %s", exc)
        print(json.dumps({"success": False, "error": str(exc)}, ensure_ascii=False), file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:
        logger.exception("예기치 못한 계산 오류")
        print(json.dumps({"success": False, "error": str(exc)}, ensure_ascii=False), file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
