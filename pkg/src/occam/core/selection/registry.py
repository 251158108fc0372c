"""Candidate model registries."""

from collections.abc import Iterable, Mapping
from functools import reduce

from occam.core.selection.models import ModelSpec
from occam.graphs.models import BlockAssignment

DEFAULT_K_VALUES = (2,)
CONNECTOME_ESTIMATED_K = (4,)


def default_registry(k_values: Iterable[int] = DEFAULT_K_VALUES) -> list[ModelSpec]:
    """ER, one estimated-membership blockmodel per K, then IE.

    Args:
        k_values: Block counts of the blockmodel candidates.

    Returns:
        Candidates in tie-break order.
    """
    return [
        ModelSpec.er(),
        *(ModelSpec.sbm(k=k) for k in k_values),
        ModelSpec.ie(),
    ]


def connectome_registry(
    named_partitions: Mapping[str, BlockAssignment],
    k_values: Iterable[int] = CONNECTOME_ESTIMATED_K,
) -> list[ModelSpec]:
    """ER, one blockmodel per named partition, estimated blockmodels, then IE.

    With two or more named partitions, their common refinement is added as
    a further named blockmodel (two hemispheres by two tissue types give
    SBM-4).

    Args:
        named_partitions: Known partitions by name, for example
            hemisphere or tissue type.
        k_values: Block counts of the estimated-membership candidates.

    Returns:
        Candidates in tie-break order.
    """
    named = [
        ModelSpec.sbm(membership=membership, name=f"SBM-{membership.k} ({name})")
        for name, membership in named_partitions.items()
    ]
    if len(named_partitions) > 1:
        product = reduce(BlockAssignment.product, named_partitions.values())
        joined = " x ".join(named_partitions)
        named.append(ModelSpec.sbm(membership=product, name=f"SBM-{product.k} ({joined})"))
    return [
        ModelSpec.er(),
        *named,
        *(ModelSpec.sbm(k=k) for k in k_values),
        ModelSpec.ie(),
    ]
