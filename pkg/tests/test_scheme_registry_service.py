# tests/test_scheme_registry_service.py
#
# Covers: parse_scheme_text, load_scheme_file, scheme_registry, get_scheme,
#         composition_order_residuals
# Validates: bundled coefficient files load and satisfy their order
#            conditions; malformed files are rejected with SCHEME_FILE_INVALID.

import math

import pytest

from app.constants.error_codes import ErrorCode
from app.constants.method_ids import SPLITTING_METHODS, UNBUNDLED_METHODS
from app.core.exceptions import AppException
from app.schemas.splitting.scheme_schemas import ABSplittingScheme, CompositionScheme
from app.services.splitting.order_condition_service import (
    composition_order_residuals,
    max_order_residual,
)
from app.services.splitting import scheme_registry_service as registry_service
from app.services.splitting.scheme_registry_service import (
    get_scheme,
    load_scheme_file,
    parse_scheme_text,
    scheme_registry,
)

EXPECTED = {
    "strang": (2, 1),
    "suz90": (4, 5),
    "cmp6-13": (6, 13),
    "cmp8-21": (8, 21),
    "ss05-10": (10, 35),
    "bm02": (6, 14),
    "cmp8-19": (8, 19),
}


# -----------------------------------------------------------------------
# HELPERS
# -----------------------------------------------------------------------

def _write(tmp_path, name, body, order=2, kind="gamma", header_name=None):
    text = f"# name: {header_name or name}\n# order: {order}\n# type: {kind}\n{body}"
    (tmp_path / f"{name}.txt").write_text(text, encoding="utf-8")


def _assert_invalid(exc):
    assert exc.value.exit_code == 2
    assert exc.value.error_code == ErrorCode.SCHEME_FILE_INVALID


# -----------------------------------------------------------------------
# BUNDLED SCHEMES
# -----------------------------------------------------------------------

def test_registry_holds_every_scheme():
    assert set(scheme_registry()) == set(SPLITTING_METHODS)


@pytest.mark.parametrize("name", list(EXPECTED))
def test_bundled_scheme_order_and_stages(name):
    scheme = get_scheme(name)
    order, stages = EXPECTED[name]
    assert scheme.name == name
    assert scheme.order == order
    assert scheme.stages == stages


@pytest.mark.parametrize("name", ["strang", "suz90", "cmp6-13", "cmp8-21", "ss05-10", "cmp8-19"])
def test_compositions_are_palindromic_and_consistent(name):
    scheme = get_scheme(name)
    assert isinstance(scheme, CompositionScheme)
    assert scheme.gammas == scheme.gammas[::-1]
    assert abs(math.fsum(scheme.gammas) - 1.0) <= 1e-15


def test_bm02_is_a_symmetric_ab_scheme():
    scheme = get_scheme("bm02")
    assert isinstance(scheme, ABSplittingScheme)
    assert len(scheme.a) == 15
    assert scheme.symmetric


def test_suzuki_coefficients():
    g = get_scheme("suz90").gammas
    gamma = 1 / (4 - 4 ** (1 / 3))
    assert g[0] == pytest.approx(gamma, rel=1e-14)
    assert g[2] == pytest.approx(1 - 4 * gamma, rel=1e-14)


@pytest.mark.parametrize("name", ["suz90", "cmp6-13", "cmp8-19", "cmp8-21", "ss05-10"])
def test_order_condition_residuals_are_small(name):
    scheme = get_scheme(name)
    assert max_order_residual(scheme.gammas, scheme.order) < 1e-13


def test_unknown_scheme_raises():
    with pytest.raises(AppException) as exc:
        get_scheme("yoshida")
    assert exc.value.exit_code == 2
    assert exc.value.error_code == ErrorCode.UNKNOWN_METHOD


# -----------------------------------------------------------------------
# ORDER CONDITIONS
# -----------------------------------------------------------------------

def test_residual_count_grows_with_order():
    g = get_scheme("cmp8-21").gammas
    assert len(composition_order_residuals(g, 2)) == 1
    assert len(composition_order_residuals(g, 4)) == 2
    assert len(composition_order_residuals(g, 6)) == 4
    assert len(composition_order_residuals(g, 8)) == 8
    # orders above 8 are checked against the order-8 conditions
    assert len(composition_order_residuals(g, 10)) == 8


def test_strang_fails_fourth_order_conditions():
    residuals = composition_order_residuals([0.5, 0.5], 4)
    assert residuals[0] == 0.0
    assert residuals[1] == pytest.approx(0.25)


def test_odd_order_rejected():
    with pytest.raises(AppException) as exc:
        composition_order_residuals([1.0], 3)
    assert exc.value.error_code == ErrorCode.INVALID_CONFIG


# -----------------------------------------------------------------------
# MALFORMED FILES
# -----------------------------------------------------------------------

def test_valid_file_in_custom_directory(tmp_path):
    _write(tmp_path, "half", "0.5\n0.5\n")
    scheme = load_scheme_file("half", tmp_path)
    assert scheme.gammas == [0.5, 0.5]


def test_non_palindromic_gammas_rejected(tmp_path):
    _write(tmp_path, "skew", "0.3\n0.7\n")
    with pytest.raises(AppException) as exc:
        load_scheme_file("skew", tmp_path)
    _assert_invalid(exc)


def test_gammas_not_summing_to_one_rejected(tmp_path):
    _write(tmp_path, "short", "0.4\n0.4\n")
    with pytest.raises(AppException) as exc:
        load_scheme_file("short", tmp_path)
    _assert_invalid(exc)


def test_claimed_order_not_met_rejected(tmp_path):
    _write(tmp_path, "liar", "0.5\n0.5\n", order=4)
    with pytest.raises(AppException) as exc:
        load_scheme_file("liar", tmp_path)
    _assert_invalid(exc)
    assert exc.value.details["residual"] == pytest.approx(0.25)


def test_header_name_mismatch_rejected(tmp_path):
    _write(tmp_path, "alpha", "1\n", header_name="beta")
    with pytest.raises(AppException) as exc:
        load_scheme_file("alpha", tmp_path)
    _assert_invalid(exc)


def test_non_decimal_line_rejected(tmp_path):
    _write(tmp_path, "frac", "1/2\n1/2\n")
    with pytest.raises(AppException) as exc:
        load_scheme_file("frac", tmp_path)
    _assert_invalid(exc)
    assert exc.value.details["line"] == 4


def test_ab_file_with_even_count_rejected(tmp_path):
    _write(tmp_path, "ab4", "0.5\n0.5\n0.5\n0.5\n", kind="ab")
    with pytest.raises(AppException) as exc:
        load_scheme_file("ab4", tmp_path)
    _assert_invalid(exc)


def test_missing_header_rejected():
    with pytest.raises(AppException) as exc:
        parse_scheme_text("bare", "# name: bare\n1\n")
    _assert_invalid(exc)


def test_unknown_type_rejected():
    with pytest.raises(AppException) as exc:
        parse_scheme_text("odd", "# name: odd\n# order: 2\n# type: matrix\n1\n")
    _assert_invalid(exc)


def test_missing_file_is_an_io_error(tmp_path):
    with pytest.raises(AppException) as exc:
        load_scheme_file("absent", tmp_path)
    assert exc.value.exit_code == 4
    assert exc.value.error_code == ErrorCode.DATA_FILE_MISSING


# -----------------------------------------------------------------------
# PUBLISHED TABLES NOT BUNDLED
# -----------------------------------------------------------------------

@pytest.fixture
def scheme_dir(tmp_path, monkeypatch):
    monkeypatch.setattr(registry_service, "SCHEME_DIR", tmp_path)
    registry_service._supplied_scheme.cache_clear()
    yield tmp_path
    registry_service._supplied_scheme.cache_clear()


def test_bundled_tables_do_not_claim_published_ids():
    assert not set(UNBUNDLED_METHODS) & set(scheme_registry())
    for name in ("cmp6-13", "cmp8-19", "cmp8-21"):
        assert "Not a published table" in get_scheme(name).source


@pytest.mark.parametrize("name", ["ss05-6", "ss05-8", "bce22"])
def test_published_id_without_table_is_an_io_error(name, scheme_dir):
    with pytest.raises(AppException) as exc:
        get_scheme(name)
    assert exc.value.exit_code == 4
    assert exc.value.error_code == ErrorCode.DATA_FILE_MISSING
    assert exc.value.details["path"] == str(scheme_dir / f"{name}.txt")


def test_supplied_published_table_is_loaded(scheme_dir):
    _write(scheme_dir, "bce22", "0.5\n0.5\n1.0\n", order=2, kind="ab")
    scheme = get_scheme("bce22")
    assert isinstance(scheme, ABSplittingScheme)
    assert scheme.a == [0.5, 0.5]
    assert scheme.b == [1.0]
