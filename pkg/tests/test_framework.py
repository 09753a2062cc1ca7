import json
import warnings
from itertools import combinations

import numpy as np
import pytest

from twinstore import (
    FieldMatrix,
    PrimeField,
    TwinConfig,
    TwinSystem,
    build_message_matrix,
    deploy,
    encode_system,
    fail_node,
    helper_share,
    reconstruct,
    repair,
)
from twinstore.errors import (
    DeadNode,
    DimensionMismatch,
    EmptyHelper,
    InsufficientSeeds,
    NotEnoughHelpers,
    NotEnoughLiveNodes,
    PayloadTooLarge,
    SameTypeHelper,
)

from conftest import build_config


class TestMessageMatrix:
    def test_column_major_fill(self, f101):
        msg = build_message_matrix(list(range(1, 17)), 4, f101)
        assert np.array_equal(msg.a1.column(0), [1, 2, 3, 4])
        assert np.array_equal(msg.a1.column(3), [13, 14, 15, 16])
        assert msg.pad == 0

    def test_short_payload_pads(self, f11):
        msg = build_message_matrix([7, 8, 9], 2, f11)
        assert msg.pad == 1
        assert msg.a1.tolist() == [[7, 9], [8, 0]]

    def test_empty_payload(self, f11):
        msg = build_message_matrix([], 3, f11)
        assert msg.a1 == FieldMatrix.zeros(3, 3, f11)
        assert msg.pad == 9

    def test_oversized_payload(self, f11):
        with pytest.raises(PayloadTooLarge):
            build_message_matrix(list(range(10)), 3, f11)

    def test_flatten_is_column_major(self, f101):
        msg = build_message_matrix(list(range(1, 17)), 4, f101)
        assert np.array_equal(msg.flatten(), np.arange(1, 17))

    def test_transpose_view(self, f11):
        msg = build_message_matrix(list(range(1, 5)), 2, f11)
        assert msg.a2 == msg.a1.T


class TestEncodeSystem:
    def test_zero_message_zero_nodes(self, f11):
        config = build_config(f11, 5, 6, 4)
        system = encode_system(config, build_message_matrix([], 4, f11))
        for t in (1, 2):
            for j in range(1, config.node_count(t) + 1):
                assert not system.node(t, j).symbols.any()

    def test_systematic_nodes_read_off_columns(self, f11):
        config = build_config(f11, 6, 7, 4, style="systematic")
        msg = build_message_matrix(list(range(1, 17)), 4, f11)
        system = encode_system(config, msg)
        for j in range(1, 5):
            assert np.array_equal(system.node(1, j).symbols, msg.a1.column(j - 1))
            assert np.array_equal(system.node(2, j).symbols, msg.a1.row(j - 1))

    def test_demo_mixing_columns(self, demo_config, demo_layout, demo_system):
        a = demo_layout.matrix.a1.array
        p = 11
        # Type 1 node 5: all-ones encoding vector -> row sums
        assert np.array_equal(demo_system.node(1, 5).symbols, a.sum(axis=1) % p)
        # Type 2 node 5: weights (1,4,3,2) across each column
        w = np.array([1, 4, 3, 2])
        assert np.array_equal(demo_system.node(2, 5).symbols, (w @ a) % p)

    def test_dimension_mismatch(self, f11):
        config = build_config(f11, 5, 6, 4)
        with pytest.raises(DimensionMismatch):
            encode_system(config, build_message_matrix([1], 3, f11))

    def test_connectivity_warning_flag(self, f11):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            low = TwinConfig.build(f11, 5, 6, 4)
        assert not low.meets_recommended_connectivity
        assert any("2k-1" in str(w.message) for w in caught)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            ok = TwinConfig.build(f11, 7, 8, 4)
        assert ok.meets_recommended_connectivity
        assert not caught


class TestReconstruct:
    def test_demo_type2_first_four(self, demo_layout, demo_system):
        rec = reconstruct(demo_system, 2, [1, 2, 3, 4])
        assert rec.a1 == demo_layout.matrix.a1

    def test_systematic_type1_read_off(self, f11):
        config = build_config(f11, 6, 7, 4, style="systematic")
        msg = build_message_matrix(list(range(1, 17)), 4, f11)
        system = encode_system(config, msg)
        assert reconstruct(system, 1, [1, 2, 3, 4]).a1 == msg.a1

    def test_random_roundtrips(self):
        rng = np.random.default_rng(11)
        trials = 0
        while trials < 200:
            p = [11, 13, 101][trials % 3]
            field = PrimeField(p)
            k = int(rng.integers(2, 5))
            n1 = k + int(rng.integers(0, 4))
            n2 = k + int(rng.integers(0, 4))
            if max(n1, n2) > p:
                continue
            style = ["vandermonde", "systematic"][trials % 2]
            config = build_config(field, n1, n2, k, style=style)
            msg = build_message_matrix(field.uniform(rng, k * k), k, field)
            system = encode_system(config, msg)
            t = int(rng.integers(1, 3))
            idx = (1 + rng.permutation(config.node_count(t))[:k]).tolist()
            assert reconstruct(system, t, idx).a1 == msg.a1
            trials += 1

    def test_errors(self, demo_system):
        with pytest.raises(NotEnoughLiveNodes):
            reconstruct(demo_system, 1, [1, 2, 3])
        with pytest.raises(NotEnoughLiveNodes):
            reconstruct(demo_system, 1, [1, 1, 2, 3])
        failed = fail_node(demo_system, 2, 2)
        with pytest.raises(DeadNode):
            reconstruct(failed, 2, [1, 2, 3, 4])


class TestHelperShare:
    def test_unit_target_reads_first_symbol(self, demo_config, demo_system):
        target = demo_config.encoding_vector(1, 1)  # e1 column
        share = helper_share(demo_system.node(2, 1), target)
        assert share == demo_system.node(2, 1).symbols[0]

    def test_all_ones_helper(self, demo_config, demo_layout, demo_system):
        # Type 2 node 4 stores column sums, so an e1 target reads r1+r2+r3+r4
        target = demo_config.encoding_vector(1, 1)
        share = helper_share(demo_system.node(2, 4), target)
        r = demo_layout.random_symbols
        assert share == int(r[:4].sum() % 11)

    def test_zero_target(self, demo_config, demo_system):
        from twinstore import EncodingVector
        zero = EncodingVector(1, 1, np.zeros(4, dtype=np.int64), demo_config.field)
        assert helper_share(demo_system.node(2, 3), zero) == 0

    def test_same_type_rejected(self, demo_config, demo_system):
        with pytest.raises(SameTypeHelper):
            helper_share(demo_system.node(1, 2), demo_config.encoding_vector(1, 1))

    def test_empty_helper_rejected(self, demo_config, demo_system):
        failed = fail_node(demo_system, 2, 1)
        with pytest.raises(EmptyHelper):
            helper_share(failed.node(2, 1), demo_config.encoding_vector(1, 1))


class TestRepair:
    def test_demo_type1_from_leading_type2(self, demo_system):
        original = demo_system.node(1, 1)
        broken = fail_node(demo_system, 1, 1)
        restored, content = repair(broken, 1, 1, [1, 2, 3, 4])
        assert content == original
        assert restored.node(1, 1) == original
        assert restored.is_live(1, 1)

    def test_demo_type2_from_spread_helpers(self, demo_system):
        original = demo_system.node(2, 2)
        broken = fail_node(demo_system, 2, 2)
        _, content = repair(broken, 2, 2, [1, 3, 4, 5])
        assert content == original

    def test_random_roundtrips(self):
        rng = np.random.default_rng(12)
        trials = 0
        while trials < 500:
            p = [11, 101][trials % 2]
            field = PrimeField(p)
            k = int(rng.integers(2, 5))
            n1 = k + int(rng.integers(0, 4))
            n2 = k + int(rng.integers(0, 4))
            config = build_config(field, n1, n2, k,
                                  style=["vandermonde", "systematic"][trials % 2])
            msg = build_message_matrix(field.uniform(rng, k * k), k, field)
            system = encode_system(config, msg)
            t = int(rng.integers(1, 3))
            j = int(rng.integers(1, config.node_count(t) + 1))
            helpers = (1 + rng.permutation(config.node_count(3 - t))[:k]).tolist()
            _, content = repair(fail_node(system, t, j), t, j, helpers)
            assert content == system.node(t, j)
            trials += 1

    def test_share_depends_only_on_helper_and_target(self, demo_system):
        # zero out every node except the helper; the share must not change
        target_cfg = demo_system.config
        target = target_cfg.encoding_vector(1, 1)
        share_full = helper_share(demo_system.node(2, 3), target)
        stripped = demo_system
        for t in (1, 2):
            for j in range(1, target_cfg.node_count(t) + 1):
                if (t, j) != (2, 3):
                    stripped = stripped.with_node(t, j, np.zeros(4, dtype=int), True)
        assert helper_share(stripped.node(2, 3), target) == share_full

    def test_default_policy_uses_lowest_live(self, demo_system):
        broken = fail_node(fail_node(demo_system, 1, 1), 2, 1)
        restored, content = repair(broken, 1, 1)  # helpers default to 2,3,4,5
        assert content == demo_system.node(1, 1)

    def test_errors(self, demo_system):
        broken = fail_node(demo_system, 1, 1)
        with pytest.raises(NotEnoughHelpers):
            repair(broken, 1, 1, [1, 2, 3])
        with pytest.raises(NotEnoughHelpers):
            repair(broken, 1, 1, [1, 1, 2, 3])
        with pytest.raises(NotEnoughHelpers):
            repair(broken, 1, 1, [1, 2, 3, 7])
        doubly = fail_node(broken, 2, 4)
        with pytest.raises(NotEnoughHelpers):
            repair(doubly, 1, 1, [1, 2, 3, 4])


class TestDeploy:
    def test_demo_seeds_match_full_encode(self, demo_config, demo_layout,
                                          demo_system):
        got = deploy(demo_config, demo_layout.matrix, [1, 2, 3, 4], [1, 2, 3, 4])
        assert got == demo_system

    def test_square_config_deploy_is_encode(self, f11):
        config = build_config(f11, 4, 4, 4)
        msg = build_message_matrix(list(range(16)), 4, f11)
        assert deploy(config, msg, [1, 2, 3, 4], [1, 2, 3, 4]) == \
            encode_system(config, msg)

    def test_random_configs(self):
        rng = np.random.default_rng(13)
        for trial in range(100):
            field = PrimeField([11, 101][trial % 2])
            k = int(rng.integers(2, 5))
            n1 = k + int(rng.integers(0, 4))
            n2 = k + int(rng.integers(0, 4))
            config = build_config(field, n1, n2, k)
            msg = build_message_matrix(field.uniform(rng, k * k), k, field)
            seeds1 = (1 + rng.permutation(n1)[:k]).tolist()
            seeds2 = (1 + rng.permutation(n2)[:k]).tolist()
            assert deploy(config, msg, seeds1, seeds2) == encode_system(config, msg)

    def test_insufficient_seeds(self, demo_config, demo_layout):
        with pytest.raises(InsufficientSeeds):
            deploy(demo_config, demo_layout.matrix, [1, 2, 3], [1, 2, 3, 4])
        with pytest.raises(InsufficientSeeds):
            deploy(demo_config, demo_layout.matrix, [1, 2, 3, 9], [1, 2, 3, 4])


class TestUniversality:
    def test_all_reconstruction_subsets(self, demo_config, demo_layout,
                                        demo_system):
        for t in (1, 2):
            n = demo_config.node_count(t)
            for subset in combinations(range(1, n + 1), 4):
                rec = reconstruct(demo_system, t, list(subset))
                assert rec.a1 == demo_layout.matrix.a1

    def test_all_repair_helper_subsets(self, demo_config, demo_system):
        for t in (1, 2):
            helpers_n = demo_config.node_count(3 - t)
            for j in range(1, demo_config.node_count(t) + 1):
                broken = fail_node(demo_system, t, j)
                for helpers in combinations(range(1, helpers_n + 1), 4):
                    _, content = repair(broken, t, j, list(helpers))
                    assert content == demo_system.node(t, j)


class TestSnapshotJson:
    def test_roundtrip(self, demo_system):
        doc = json.loads(json.dumps(demo_system.to_json_dict()))
        again = TwinSystem.from_json_dict(doc)
        assert again == demo_system

    def test_roundtrip_with_failures(self, demo_system):
        broken = fail_node(demo_system, 2, 3)
        doc = json.loads(json.dumps(broken.to_json_dict()))
        again = TwinSystem.from_json_dict(doc)
        assert again == broken
        assert not again.is_live(2, 3)
        assert again.node(2, 3).is_empty
