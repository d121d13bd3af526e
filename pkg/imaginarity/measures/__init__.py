from imaginarity.measures.base import (
    AZParams,
    ImaginarityMeasure,
    MeasureReport,
    MeasureValue,
    evaluate_report,
    get_measure,
    measure_class,
    measure_grid,
)
from imaginarity.measures.divergences import (
    f_alpha_z,
    renyi_az_divergence,
    tsallis_relative_entropy,
    tsallis_relative_operator_entropy,
    tsallis_relative_operator_entropy_by_mean,
    umegaki_relative_entropy,
    von_neumann_entropy,
)
from imaginarity.measures.engines import (
    OperatorMeasure,
    RenyiMeasure,
    TsallisMeasure,
    UmegakiMeasure,
    imaginarity_operator,
    imaginarity_renyi,
    imaginarity_tsallis,
    imaginarity_umegaki,
)
