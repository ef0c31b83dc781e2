"""
Batch front end.

    python -m src.cli <verb> [--input FILE] [--family NAME --param K [--index I]]
                             [--max-n N] [--out FILE]

Every verb renders a Report; the exit code is 0 when all checks pass, 1 when
a check fails and 2 on bad input or an algebra error.
"""

import argparse
import asyncio
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from .algebra.action import PartialAction, is_order_preserving, lift, munn, restrict
from .algebra.congruence import Congruence, enumerate_congruences, is_idempotent_pure, quotient
from .algebra.core import (
    FiniteInverseSemigroup,
    compatibility,
    green_r,
    is_e_unitary,
    is_f_inverse,
    natural_partial_order,
    sigma,
)
from .algebra.errors import (
    AlgebraError,
    ClassJoinFails,
    GroundMismatch,
    InputError,
    InvariantViolation,
    NotAnInverseSemigroup,
    NotCompatible,
    NotInjective,
    NotOrderPreserving,
    NotStrict,
    PremorphismError,
    UnknownVerb,
)
from .algebra.ltriple import build_ltriple, search_globalization
from .algebra.models import Report
from .algebra.product import (
    alpha_map,
    build_m_subsemigroup,
    build_semidirect,
    check_group_remark,
    embedding_theorem,
    is_fully_strict,
    strictness,
    yes_no,
)
from .instances.fileformat import InstanceFile, parse_instance
from .instances.generators import build_corpus, generate
from .runner.queue import CertificationQueue, corpus_report
from .utils.config import settings
from .utils.logger import logger

VERBS = (
    "validate",
    "orders",
    "congruences",
    "quotient",
    "munn",
    "lift",
    "product",
    "embed",
    "globalizable",
    "ltriple",
    "certify-all",
)


def _pair_list(S: FiniteInverseSemigroup, pairs, symbol: str) -> str:
    text = ", ".join(f"{S.label(a)}{symbol}{S.label(b)}" for a, b in pairs if a != b)
    return text or "(none)"


def _require_congruence(instance: InstanceFile, S: FiniteInverseSemigroup, verb: str) -> Congruence:
    if not instance.has_congruence:
        raise InputError(f"'{verb}' needs a congruence block")
    return instance.congruence(S)


def _base_action(instance: InstanceFile, S: FiniteInverseSemigroup) -> Tuple[PartialAction, str]:
    """The file's action, or the Munn representation when there is none."""
    delta = munn(S)
    action = instance.action(S)
    if action is None or (action.semilattice is not None and action.maps == delta.maps):
        return delta, "delta"
    return action, "tau"


def _working_action(
    instance: InstanceFile, S: FiniteInverseSemigroup, report: Report
) -> Tuple[PartialAction, str]:
    """The base action, lifted along the file's congruence if it has one."""
    action, symbol = _base_action(instance, S)
    if not instance.has_congruence:
        return action, symbol
    rho = instance.congruence(S)
    report.info.append(f"rho classes: {rho.render()}")
    return lift(action, rho), symbol + "~"


def _validate(instance: InstanceFile, report: Report) -> None:
    try:
        S = instance.semigroup()
    except NotAnInverseSemigroup as e:
        report.add("inverse-semigroup", False, f"{type(e).__name__}: {e}")
        return
    report.add(
        "inverse-semigroup", True, f"(order {S.n}, {len(S.idempotents)} idempotents)"
    )

    if instance.has_congruence:
        try:
            rho = instance.congruence(S)
            report.add("congruence", True, rho.render())
            report.info.append(f"idempotent pure: {yes_no(is_idempotent_pure(rho))}")
        except NotCompatible as e:
            report.add("congruence", False, f"{type(e).__name__}: {e}")

    if instance.has_action:
        try:
            action = instance.action(S)
            report.add("premorphism", True)
            report.info.append(f"global: {yes_no(action.is_global)}")
        except (PremorphismError, GroundMismatch, NotInjective) as e:
            report.add("premorphism", False, f"{type(e).__name__}: {e}")
            return
        if instance.subset is not None:
            outside = [x for x in instance.subset if not 0 <= x < action.ground]
            report.add("subset-in-ground", not outside, str(outside[0]) if outside else None)


def _orders(instance: InstanceFile, report: Report) -> None:
    S = instance.semigroup()
    order = natural_partial_order(S)
    compatible = compatibility(S)
    r = green_r(S)
    report.info.append("natural order: " + _pair_list(S, order.pairs(), "<"))
    report.info.append(
        "compatible: " + _pair_list(S, [(a, b) for a, b in compatible.pairs() if a < b], "~")
    )
    report.info.append("R classes: " + ",".join(S.labels(b) for b in r.classes()))
    group_congruence = sigma(S)
    report.info.append(f"sigma classes: {group_congruence.render()}")
    report.info.append(f"E-unitary: {yes_no(is_e_unitary(S))}")
    report.info.append(f"F-inverse: {yes_no(is_f_inverse(S).holds)}")
    one = S.identity()
    report.info.append(f"identity: {S.label(one) if one is not None else 'none'}")

    report.add("natural-order-is-partial-order", order.is_partial_order())
    mismatch = next(
        (
            (e, f)
            for e in S.idempotents
            for f in S.idempotents
            if S.leq(e, f) != (S.mul[e][f] == e)
        ),
        None,
    )
    report.add(
        "order-on-idempotents",
        mismatch is None,
        None if mismatch is None else f"({S.label(mismatch[0])},{S.label(mismatch[1])})",
    )
    report.add("sigma-quotient-is-group", quotient(S, group_congruence)[0].is_group())
    report.add("R-meet-compatible-is-equality", r.intersection(compatible).is_equality())
    report.add("sigma-contains-compatible", compatible.issubset(group_congruence.relation()))
    report.add("sigma-is-equivalence", group_congruence.relation().is_equivalence())


def _congruences(instance: InstanceFile, report: Report) -> None:
    S = instance.semigroup()
    found = enumerate_congruences(S)
    pure = 0
    for i, rho in enumerate(found):
        flag = is_idempotent_pure(rho)
        pure += flag
        report.info.append(f"rho{i}: {rho.render()} idempotent-pure={yes_no(flag)}")
    report.info.append(f"congruences: {len(found)}, idempotent pure: {pure}")
    report.add("equality-present", any(rho.is_equality() for rho in found))
    report.add("universal-present", any(rho.is_universal() for rho in found))


def _quotient(instance: InstanceFile, report: Report) -> None:
    S = instance.semigroup()
    rho = _require_congruence(instance, S, "quotient")
    Q, _ = quotient(S, rho)
    report.info.append(f"rho classes: {rho.render()}")
    report.info.append("elements: " + Q.labels(range(Q.n)))
    for a in range(Q.n):
        report.info.append(f"{Q.label(a)}: " + " ".join(Q.label(b) for b in Q.mul[a]))
    report.info.append(f"idempotent pure: {yes_no(is_idempotent_pure(rho))}")
    report.info.append(f"group: {yes_no(Q.is_group())}")
    report.add("quotient-is-inverse-semigroup", True, f"(order {Q.n})")


def _munn(instance: InstanceFile, report: Report) -> None:
    S = instance.semigroup()
    delta = munn(S)
    report.info.append(delta.render("delta"))
    kernel: Dict = {}
    for s in range(S.n):
        kernel.setdefault(delta.maps[s], []).append(s)
    report.info.append("kernel classes: " + ",".join(S.labels(b) for b in kernel.values()))
    report.add("homomorphism", delta.is_global)


def _lift(instance: InstanceFile, report: Report) -> None:
    S = instance.semigroup()
    rho = _require_congruence(instance, S, "lift")
    action, symbol = _base_action(instance, S)
    report.info.append(f"rho classes: {rho.render()}")
    try:
        lifted = lift(action, rho)
    except ClassJoinFails as e:
        report.add("class-joins", False, f"{rho.class_label(e.class_index)}: {e.witness}")
        return
    except PremorphismError as e:
        report.add("class-joins", True)
        report.add("premorphism", False, f"{type(e).__name__}: {e}")
        return
    report.info.append(lifted.render(symbol + "~"))
    report.add("class-joins", True)
    report.add("premorphism", True)
    report.info.append(f"global: {yes_no(lifted.is_global)}")


def _product(instance: InstanceFile, report: Report) -> None:
    S = instance.semigroup()
    action, _ = _working_action(instance, S, report)
    P = build_semidirect(action)
    report.info.append(f"elements ({len(P)}): {P.render()}")
    report.add("inverse-semigroup", True)
    report.add("idempotents-and-inverses", True)
    try:
        alpha = strictness(P)
    except NotStrict as e:
        report.info.append(f"strict: no ({e})")
        return
    E = P.base
    report.info.append(
        "alpha: " + ", ".join(f"{E.label(e)}->{P.acting.label(a)}" for e, a in enumerate(alpha))
    )
    M = build_m_subsemigroup(P, alpha)
    report.info.append(f"m-subsemigroup ({len(M)}): {M.render()}")
    if is_fully_strict(P, alpha):
        report.info.append("fully strict: yes")
        report.add("group-remark", check_group_remark(P, alpha))
    else:
        report.info.append("fully strict: no")


def _embed(instance: InstanceFile, report: Report) -> None:
    S = instance.semigroup()
    rho = _require_congruence(instance, S, "embed")
    result = embedding_theorem(S, rho)
    report.title = result.title
    report.info.extend(result.info)
    report.checks.extend(result.checks)


def _globalizable(instance: InstanceFile, report: Report) -> None:
    S = instance.semigroup()
    action, _ = _working_action(instance, S, report)
    Q = action.semigroup
    check = is_order_preserving(action)
    if not check.holds:
        s, t = check.witness
        witness = f"({Q.label(s)},{Q.label(t)})"
        report.info.append(f"globalizable: NO, witness {witness}")
        report.add("order-preserving", False, witness)
        return
    report.info.append("globalizable: YES")
    report.add("order-preserving", True)
    if settings.witness_search and action.semilattice is not None:
        try:
            alpha_map(action)
        except NotStrict:
            report.info.append("witness search skipped: action is not strict")
            return
        found = search_globalization(action)
        if found is not None:
            phi, iota = found
            report.info.append(f"globalization on {phi.ground} points, iota = {list(iota)}")
        report.add("globalization-found", found is not None)


def _ltriple(instance: InstanceFile, report: Report) -> None:
    S = instance.semigroup()
    action, _ = _working_action(instance, S, report)
    if action.is_global and instance.subset is not None:
        outside = [x for x in instance.subset if not 0 <= x < action.ground]
        if outside:
            raise InputError(f"subset point {outside[0]} is outside the ground set")
        phi_prime, iota = action, tuple(instance.subset)
        report.info.append("Y = {" + ",".join(action.point_label(x) for x in iota) + "}")
        action = restrict(phi_prime, iota)
    elif action.is_global:
        phi_prime, iota = action, tuple(range(action.ground))
    else:
        try:
            found = search_globalization(action, force=True)
        except (NotStrict, NotOrderPreserving) as e:
            report.add("globalization-found", False, f"{type(e).__name__}: {e}")
            return
        if found is None:
            report.add("globalization-found", False)
            return
        phi_prime, iota = found
    try:
        built = build_ltriple(action, phi_prime, iota)
    except (NotStrict, NotOrderPreserving) as e:
        report.add("strict-and-order-preserving", False, f"{type(e).__name__}: {e}")
        return
    report.info.extend(built.report.info)
    report.checks.extend(built.report.checks)


def _certify_all(max_n: Optional[int]) -> Report:
    bound = settings.corpus_max_n if max_n is None else max_n
    certificates = asyncio.run(CertificationQueue().run(build_corpus(bound)))
    return corpus_report(certificates, bound)


HANDLERS: Dict[str, Callable[[InstanceFile, Report], None]] = {
    "validate": _validate,
    "orders": _orders,
    "congruences": _congruences,
    "quotient": _quotient,
    "munn": _munn,
    "lift": _lift,
    "product": _product,
    "embed": _embed,
    "globalizable": _globalizable,
    "ltriple": _ltriple,
}


def run_command(
    verb: str, instance: Optional[InstanceFile] = None, max_n: Optional[int] = None
) -> Tuple[str, int]:
    """
    Run one verb and render its report.

    Args:
        verb: One of VERBS
        instance: Input instance (every verb except certify-all needs one)
        max_n: Largest corpus order for certify-all

    Returns:
        (report text, exit code)
    """
    try:
        if verb not in VERBS:
            raise UnknownVerb(f"unknown verb {verb!r}", verb)
        if verb == "certify-all":
            report = _certify_all(max_n)
        else:
            if instance is None:
                raise InputError(f"'{verb}' needs --input or --family")
            report = Report(title=verb)
            HANDLERS[verb](instance, report)
    except InvariantViolation as e:
        logger.error(f"{verb} hit an invariant violation: {e}")
        return f"ERROR {type(e).__name__}: {e}\n", 1
    except AlgebraError as e:
        logger.warning(f"{verb} failed with {type(e).__name__}: {e}")
        return f"ERROR {type(e).__name__}: {e}\n", 2
    return report.render(), 0 if report.all_passed else 1


def load_instance(args: argparse.Namespace) -> Optional[InstanceFile]:
    """
    Read the instance named by --input or --family.

    Raises:
        InputError: If both or an unreadable file are given
    """
    if args.input and args.family:
        raise InputError("give either --input or --family, not both")
    if args.input:
        path = Path(args.input)
        if not path.is_file():
            raise InputError(f"no such file: {args.input}")
        return parse_instance(path)
    if args.family:
        return generate(args.family, args.param, args.index)
    return None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="invsemi",
        description="Partial actions of finite inverse semigroups and their semidirect products",
    )
    parser.add_argument("verb", help=", ".join(VERBS))
    parser.add_argument("--input", help="instance file")
    parser.add_argument("--family", help="builtin family: In, chain, cyclic, vee, semilattice")
    parser.add_argument("--param", type=int, default=0, help="family parameter")
    parser.add_argument("--index", type=int, default=0, help="isomorphism class for semilattices")
    parser.add_argument("--max-n", type=int, default=None, help="largest order for certify-all")
    parser.add_argument("--out", help="write the report here instead of stdout")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point."""
    args = build_parser().parse_args(argv)
    try:
        instance = None if args.verb == "certify-all" else load_instance(args)
    except InputError as e:
        text, code = f"ERROR {type(e).__name__}: {e}\n", 2
    else:
        text, code = run_command(args.verb, instance, args.max_n)

    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
