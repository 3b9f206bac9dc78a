"""Exact F_p computations of K(n)-degrees and primitive generators for finite graded Hopf algebras."""

from .algebra import (GradedAlgebra, Generator, Module, Presentation, augmentation_ideal, cyclic_group_algebra,
                      dual_module, from_presentation, group_algebra, kunneth, left_annihilator,
                      module_indecomposables, regular_module, trivial_module, unit_algebra)
from .bar import TorTable, tor_bar
from .errors import KnDegreeError
from .frobenius import FrobeniusCertificate, frobenius_certificate
from .hopf import HopfAlgebra, attach_hopf, check_hopf, dual_hopf, group_hopf
from .linalg import CoefficientContext, Degree, GradedMap, GradedSpace, make_space
from .morava import (EMAlgebra, bordism_class, degree_additivity_check, invariant_report, kn_degree,
                     primitive_generator, rho, rw_algebra)

__version__ = "0.1.0"
