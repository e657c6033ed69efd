"""scikit-learn style front end: separations in, forces out.

Nothing is learned from data; ``fit`` only validates the hyper-parameters
and resolves the substrate, so the estimator can be cloned, grid-searched
over ``delta_ev``/``mu_ev`` or put at the end of a pipeline.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted

from .force import (
    NumericsConfig,
    force_asymptotic,
    force_full,
    force_ideal_metal_classical,
    force_l0,
)
from .kinematics import DEFAULT_VF_RATIO, GrapheneParams, Scenario
from .materials import SubstrateModel, substrate_from_name

ESTIMATOR_MODES = ("full", "l0", "asymptotic", "classical")


class CasimirPolderForce(BaseEstimator):
    """Casimir-Polder force on a particle above a (graphene-coated) plate.

    Parameters
    ----------
    temperature_k : float
    delta_ev, mu_ev : float or None
        Gap and chemical potential of the graphene sheet.  With both
        ``None`` the substrate is bare.
    substrate : str or SubstrateModel
        ``"sio2"``, ``"vacuum"``, ``"ideal-metal"``, ``"table:PATH"`` or a
        model instance.
    alpha0_cm3 : float
        Static polarizability of the particle.
    mode : {"full", "l0", "asymptotic", "classical"}
    vf_ratio : float
        Fermi velocity over the speed of light.
    rel_tol : float
        Relative quadrature tolerance.

    Examples
    --------
    >>> est = CasimirPolderForce(delta_ev=0.1, mu_ev=0.25, mode="l0").fit()
    >>> est.predict([6.0, 10.0]).shape
    (2,)
    """

    def __init__(self, temperature_k=300.0, delta_ev=None, mu_ev=None, substrate="sio2",
                 alpha0_cm3=1.0, mode="full", vf_ratio=DEFAULT_VF_RATIO, rel_tol=1e-8):
        self.temperature_k = temperature_k
        self.delta_ev = delta_ev
        self.mu_ev = mu_ev
        self.substrate = substrate
        self.alpha0_cm3 = alpha0_cm3
        self.mode = mode
        self.vf_ratio = vf_ratio
        self.rel_tol = rel_tol

    def fit(self, X=None, y=None):
        """Validate parameters.  ``X`` and ``y`` are ignored."""
        if self.mode not in ESTIMATOR_MODES:
            raise ValueError(f"mode must be one of {ESTIMATOR_MODES}, got {self.mode!r}")
        if isinstance(self.substrate, SubstrateModel):
            self.substrate_ = self.substrate
        else:
            self.substrate_ = substrate_from_name(str(self.substrate))
        if self.delta_ev is None and self.mu_ev is None:
            self.graphene_ = None
        else:
            self.graphene_ = GrapheneParams(delta=self.delta_ev or 0.0, mu=self.mu_ev or 0.0,
                                            vf_ratio=self.vf_ratio)
        if self.mode == "asymptotic" and self.graphene_ is None:
            raise ValueError("mode 'asymptotic' needs delta_ev or mu_ev")
        self.config_ = NumericsConfig(rel_tol=self.rel_tol)
        # fails early on bad temperature or polarizability
        self.template_ = Scenario.from_um(1.0, self.temperature_k, self.alpha0_cm3)
        return self

    def _force(self, a_um):
        scenario = self.template_.with_separation(a_um * 1e-6)
        if self.mode == "classical":
            return force_ideal_metal_classical(scenario)
        if self.mode == "asymptotic":
            return force_asymptotic(scenario, self.graphene_)
        compute = force_full if self.mode == "full" else force_l0
        return compute(scenario, self.graphene_, self.substrate_, self.config_).total

    def predict(self, X):
        """Force in newtons (negative is attractive) at separations ``X`` in um.

        ``X`` may be 1-D or a single column.
        """
        check_is_fitted(self, "config_")
        X = check_array(X, ensure_2d=False, dtype=np.float64)
        if X.ndim == 2:
            if X.shape[1] != 1:
                raise ValueError(f"expected one column of separations, got {X.shape[1]}")
            X = X[:, 0]
        if np.any(X <= 0):
            raise ValueError("separations must be > 0")
        return np.array([self._force(float(a)) for a in X])
