from spreadlab.cli import deps
from spreadlab.cli.outcome import CommandOutcome
from spreadlab.core.errors import InvalidParameterError
from spreadlab.models.results import BoundReport, ProductKind
from spreadlab.models.run_config import BoundChoice, RunConfig
from spreadlab.services import product_bounds
from spreadlab.services.graph_builder import product_pairs

CARTESIAN_CHOICES = {BoundChoice.K_PRODUCT, BoundChoice.SLAB_UNION, BoundChoice.SLAB_UNION_REDUCED}
TENSOR_CHOICES = {BoundChoice.SIDE, BoundChoice.GENERAL}

# --theorem N resolves to a construction by number
NUMBERED_CONSTRUCTIONS = {
    3: BoundChoice.K_PRODUCT,
    4: BoundChoice.SLAB_UNION,
    5: BoundChoice.SLAB_UNION_REDUCED,
    6: BoundChoice.SIDE,
    7: BoundChoice.SIDE,
}


def add_parser(subparsers, parents) -> None:
    p = subparsers.add_parser("bound", parents=parents, help="product witness construction")
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--cartesian", dest="product", action="store_const", const=ProductKind.CARTESIAN.value)
    kind.add_argument("--tensor", dest="product", action="store_const", const=ProductKind.TENSOR.value)
    p.add_argument("--left", required=True, help="left factor: family spec or file:PATH")
    p.add_argument("--right", required=True, help="right factor: family spec or file:PATH")
    p.add_argument("--rule", required=True, help="majority, k:K or K")
    which = p.add_mutually_exclusive_group()
    which.add_argument("--construction", choices=[c.value for c in BoundChoice])
    which.add_argument("--theorem", type=int, choices=sorted(NUMBERED_CONSTRUCTIONS),
                       help="numbered alias for --construction")
    p.add_argument("--left-set", help="left factor conversion set (default: exact minimum)")
    p.add_argument("--right-set", help="right factor conversion set (default: exact minimum)")


def _default_choice(config: RunConfig) -> BoundChoice:
    if config.product == ProductKind.TENSOR:
        return BoundChoice.GENERAL
    return BoundChoice.SLAB_UNION if config.rule.is_majority else BoundChoice.K_PRODUCT


def _build(config: RunConfig, choice: BoundChoice) -> BoundReport:
    rule = config.rule
    g = deps.load_graph_source(config.left)
    h = deps.load_graph_source(config.right)

    if choice == BoundChoice.GENERAL:
        if config.left_set is not None or config.right_set is not None:
            raise InvalidParameterError("general tensor construction picks its own factor sets", "invalid_config")
        return product_bounds.tensor_general(g, h, rule)

    s_g = (deps.check_ids(g, config.left_set, "--left-set") if config.left_set is not None
           else product_bounds.factor_witness(g, rule))
    s_h = (deps.check_ids(h, config.right_set, "--right-set") if config.right_set is not None
           else product_bounds.factor_witness(h, rule))

    if choice == BoundChoice.SIDE:
        if rule.is_majority:
            return product_bounds.tensor_dynamo_witness(g, s_g, h, s_h)
        return product_bounds.tensor_k_witness(g, s_g, h, s_h, rule.k)
    if choice == BoundChoice.K_PRODUCT:
        if rule.is_majority:
            raise InvalidParameterError("k-product needs a k-threshold rule", "invalid_config")
        return product_bounds.cartesian_k_witness(g, s_g, h, s_h, rule.k)
    if not rule.is_majority:
        raise InvalidParameterError(f"{choice.value} needs the majority rule", "invalid_config")
    if choice == BoundChoice.SLAB_UNION:
        return product_bounds.cartesian_dynamo_witness(g, s_g, h, s_h)
    return product_bounds.cartesian_dynamo_witness_reduced(g, s_g, h, s_h)


def handle(config: RunConfig) -> CommandOutcome:
    choice = config.construction or _default_choice(config)
    allowed = CARTESIAN_CHOICES if config.product == ProductKind.CARTESIAN else TENSOR_CHOICES
    if choice not in allowed:
        raise InvalidParameterError(
            f"construction {choice.value} does not apply to the {config.product.value} product", "invalid_config"
        )
    report = _build(config, choice)

    result = report.model_dump(mode="json")
    result["witness_pairs"] = [list(p) for p in product_pairs(report.witness, report.right_order)]
    text = [
        f"construction: {report.construction.value}",
        f"rule: {report.rule}",
        f"bound: {report.bound}",
        f"verified: {str(report.verified).lower()} (T={report.T})",
        "witness: " + " ".join(f"({g},{h})" for g, h in product_pairs(report.witness, report.right_order)),
    ]
    if report.side is not None:
        text.append(f"side: {report.side.value}")
    if report.isolated:
        text.append(f"isolated: {report.isolated}")
    return CommandOutcome(result=result, text=text)
