from .base import GraphLearner
from .no_collaboration import NoCollaborationLearner
from .dual_ascent import DualAscentLearner
from .unrolled import UnrolledLearner
from .fixed import FixedCollaborationLearner
