"""nullspec: exact spectra of premonoform classes and the classification of
nullity classes over small abelian categories."""

from .category import (Backend, Caps, CatObject, Morphism, SubobjectEntry, Universe,
                       cokernel, direct_sum, hom_basis, homs, image, is_isomorphic,
                       kernel, subobjects)
from .closures import (IsoSet, MembershipMemo, in_ext_closure, in_nullity_closure,
                       in_serre_closure, nontrivial_quotients, nullity_equivalent,
                       quot_closure, sub_closure)
from .errors import (BackendMismatch, ConfigError, EnumerationCapExceeded,
                     NullspecError, ZeroObjectError)
from .fdmodules import Algebra, FdBackend, QuiverPreset, local_algebra_443, path_algebra
from .linalg import (Matrix, Subspace, enumerate_subspaces, gaussian_binomial,
                     kernel_basis, rank, rref, solve_commutant)
from .pgroups import AbGroupBackend
from .predicates import (ClassReport, classify, classify_all, is_indecomposable,
                         is_monoform, is_premonoform, is_simple, is_uniform)
from .spectrum import (ClassTrace, Lattice, SpecPoint, SpecSet, Spectrum,
                       closed_sets_dot, lattice_dot, nullity_lattice,
                       verify_bijection, verify_topology)

__version__ = "0.1.0"
