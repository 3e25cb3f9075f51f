import numpy as np
import pytest

from dampedwave.coefficients import (
    Friction,
    LinearForce,
    NoiseAmplitude,
    PowerForce,
    TruncatedForce,
    constant_friction,
    tanh_friction,
)


def test_tanh_friction_bounds_and_derivative():
    fr = tanh_friction(1.0, 0.5)
    fr.validate()
    r = np.linspace(-20, 20, 101)
    assert np.all(fr(r) > 0.5 - 1e-12)
    assert np.all(fr(r) < 1.5 + 1e-12)


def test_tanh_friction_primitive_closed_form():
    fr = tanh_friction(1.2, 0.7)
    r = np.linspace(-15, 15, 41)
    expected = 1.2 * r + 0.7 * np.log(np.cosh(r))
    assert np.max(np.abs(fr.primitive(r) - expected)) < 1e-9
    # overflow-safe for large arguments: g(r) ~ (base + swing) r - swing log 2
    big = np.array([500.0, -500.0])
    expected_big = 1.2 * big + 0.7 * (np.abs(big) - np.log(2.0))
    assert np.max(np.abs(fr.primitive(big) - expected_big)) < 1e-9


def test_primitive_inverse_roundtrip():
    fr = tanh_friction(1.0, 0.5)
    r = np.linspace(-8, 8, 33)
    assert np.max(np.abs(fr.primitive_inverse(fr.primitive(r)) - r)) < 1e-10


def test_quadrature_primitive_and_newton_fallback():
    # same friction with no closed forms provided: generic quadrature + Newton
    fr = Friction(
        value=lambda r: 1.0 + 0.5 * np.tanh(r),
        derivative=lambda r: 0.5 / np.cosh(r) ** 2,
        lower=0.5,
        upper=1.5,
    )
    ref = tanh_friction(1.0, 0.5)
    r = np.linspace(-5, 5, 21)
    assert np.max(np.abs(fr.primitive(r) - ref.primitive(r))) < 1e-12
    assert np.max(np.abs(fr.primitive_inverse(fr.primitive(r)) - r)) < 1e-9


def test_constant_friction():
    fr = constant_friction(2.5)
    r = np.array([-1.0, 0.0, 3.0])
    assert np.all(fr(r) == 2.5)
    assert np.max(np.abs(fr.primitive(r) - 2.5 * r)) < 1e-14
    assert np.max(np.abs(fr.primitive_inverse(2.5 * r) - r)) < 1e-14


def test_diffusivity_pinched_by_friction_bounds():
    fr = tanh_friction(1.0, 0.5)
    rho = np.linspace(-10, 10, 101)
    b = fr.diffusivity(rho)
    assert np.all(b >= 1.0 / 1.5 - 1e-10)
    assert np.all(b <= 1.0 / 0.5 + 1e-10)


def test_friction_argument_validation():
    with pytest.raises(ValueError):
        tanh_friction(0.5, 0.5)
    with pytest.raises(ValueError):
        constant_friction(-1.0)


def test_power_force_values_and_consistency():
    f = PowerForce(2.0, 3.0)
    x = np.zeros(5)
    r = np.array([-2.0, -0.5, 0.0, 0.5, 2.0])
    assert np.max(np.abs(f(x, r) + 2.0 * np.abs(r) ** 2 * r)) < 1e-12
    # derivative and antiderivative against finite differences
    h = 1e-6
    fd = (f(x, r + h) - f(x, r - h)) / (2 * h)
    assert np.max(np.abs(fd - f.derivative(x, r))) < 1e-5
    fd2 = (f.antiderivative(x, r + h) - f.antiderivative(x, r - h)) / (2 * h)
    assert np.max(np.abs(fd2 - f(x, r))) < 1e-5
    assert f.growth == 3.0


def test_truncated_force_matches_inside_and_linear_outside():
    base = PowerForce(1.0, 3.0)
    f = TruncatedForce(base, 2.0)
    x = np.zeros(3)
    inside = np.array([-1.5, 0.0, 1.9])
    assert np.max(np.abs(f(x, inside) - base(x, inside))) < 1e-12
    # beyond the radius the slope is frozen
    r = np.array([3.0, 5.0])
    slope = f.derivative(x, r)
    assert np.max(np.abs(slope - base.derivative(x, np.array([2.0, 2.0])))) < 1e-12
    # values continue the tangent line
    expected = base(x[:2], np.array([2.0, 2.0])) + (r - 2.0) * slope
    assert np.max(np.abs(f(x[:2], r) - expected)) < 1e-12


def test_truncated_force_antiderivative_is_smooth():
    base = PowerForce(1.0, 3.0)
    f = TruncatedForce(base, 1.5)
    x = np.zeros(1)
    h = 1e-6
    for r0 in [0.7, 1.5, 2.4, -3.0]:
        r = np.array([r0])
        fd = (f.antiderivative(x, r + h) - f.antiderivative(x, r - h)) / (2 * h)
        assert abs(fd[0] - f(x, r)[0]) < 1e-5


def test_linear_force():
    f = LinearForce(2.0)
    x = np.zeros(3)
    r = np.array([-1.0, 0.0, 2.0])
    assert np.max(np.abs(f(x, r) + 2.0 * r)) < 1e-14
    assert f.growth == 1.0


def test_noise_amplitude_presets():
    x = np.zeros(4)
    r = np.array([-1.0, 0.0, 0.5, 2.0])
    s = NoiseAmplitude.sine(1.0, 0.4)
    assert np.max(np.abs(s(x, r) - (1.0 + 0.4 * np.sin(r)))) < 1e-14
    h = 1e-6
    fd = (s(x, r + h) - s(x, r - h)) / (2 * h)
    assert np.max(np.abs(fd - s.derivative(x, r))) < 1e-5

    c = NoiseAmplitude.constant(0.7)
    assert np.all(c(x, r) == 0.7)
    assert np.all(c.derivative(x, r) == 0.0)

    a = NoiseAmplitude.affine(0.5, 0.25)
    assert np.max(np.abs(a(x, r) - (0.5 + 0.25 * r))) < 1e-14
