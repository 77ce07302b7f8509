"""Certified uncovered points for zone families on the unit sphere.

Any family of zones of total width below pi misses some point of S^d;
:func:`find_witness` produces such a point together with the chain of zone
merges that certifies it.
"""

from .constructions import (
    NotTight,
    TightnessCertificate,
    antipodal_common_point,
    avoiding_cap,
    check_tightness,
    equal_tight_configuration,
    refute_cap_covering,
    separating_great_sphere,
    tight_configuration,
)
from .core import (
    Cap,
    GreatSphere,
    Membership,
    UnitVector,
    WeightedNormal,
    Zone,
    angular_distance,
    cap_membership,
    dualize_cap,
    dualize_zone,
    zone_membership,
)
from .covering import MergeCertificate, merge_caps, shrink_three_caps, strict_shrink_possible
from .errors import ZoneCoverError
from .pipeline import (
    MergeStep,
    SignState,
    TotalWidthAtLeastPi,
    WitnessReport,
    find_witness,
    local_max_signs,
    refute_or_report,
)
from .verify import (
    CoverageReport,
    arrangement_candidates_s2,
    brute_force_min_cap,
    exact_cover_circle,
    sample_sphere,
    verify_covering,
)

__version__ = "0.1.0"
