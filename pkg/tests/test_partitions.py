import pytest
from oracles import bell_number, k_partitions_brute, stirling2

from qent import NotProperSubset, OutOfRange, Partition, bipartitions, complement, k_partitions


class TestKPartitions:
    def test_four_qubits_seven_bipartitions(self):
        assert len(k_partitions(4, 2)) == 7

    def test_singleton_partition(self):
        parts = k_partitions(3, 3)
        assert parts == [Partition(((0,), (1,), (2,)))]

    def test_four_choose_three(self):
        got = k_partitions(4, 3)
        assert len(got) == 6 == stirling2(4, 3)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_counts_match_stirling_recurrence(self, n):
        for k in range(1, n + 1):
            assert len(k_partitions(n, k)) == stirling2(n, k)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_bell_totals(self, n):
        total = sum(len(k_partitions(n, k)) for k in range(1, n + 1))
        assert total == bell_number(n)

    def test_matches_brute_force_sets(self):
        for n in range(2, 7):
            for k in range(1, n + 1):
                got = {p.blocks for p in k_partitions(n, k)}
                want = {
                    tuple(sorted((tuple(sorted(b)) for b in p), key=lambda b: b[0]))
                    for p in k_partitions_brute(n, k)
                }
                assert got == want

    def test_no_duplicates_and_canonical(self):
        for n in range(2, 8):
            for k in range(1, n + 1):
                parts = k_partitions(n, k)
                assert len({p.blocks for p in parts}) == len(parts)
                for p in parts:
                    assert Partition.from_blocks(p.blocks) == p

    def test_deterministic_order(self):
        assert k_partitions(5, 3) == k_partitions(5, 3)

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            k_partitions(4, 0)
        with pytest.raises(OutOfRange):
            k_partitions(4, 5)
        with pytest.raises(OutOfRange):
            k_partitions(15, 2)


class TestBipartitions:
    @pytest.mark.parametrize("n,count", [(2, 1), (3, 3), (4, 7), (5, 15)])
    def test_counts(self, n, count):
        parts = bipartitions(n)
        assert len(parts) == count == 2 ** (n - 1) - 1
        assert parts == k_partitions(n, 2)

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            bipartitions(1)


class TestComplement:
    def test_basic(self):
        assert complement((0,), 3) == (1, 2)
        assert complement((1, 3), 4) == (0, 2)

    def test_full_set_rejected(self):
        with pytest.raises(NotProperSubset):
            complement((0, 1, 2), 3)

    def test_not_subset_rejected(self):
        with pytest.raises(NotProperSubset):
            complement((0, 5), 3)
        with pytest.raises(NotProperSubset):
            complement((), 3)

    def test_disjoint_union(self):
        for n in (3, 4, 5):
            for sub in ((0,), (1, 2), tuple(range(n - 1))):
                rest = complement(sub, n)
                assert sorted(set(sub) | set(rest)) == list(range(n))
                assert not set(sub) & set(rest)


class TestPartitionType:
    def test_rejects_overlap(self):
        with pytest.raises(ValueError):
            Partition(((0, 1), (1, 2)))

    def test_rejects_gap(self):
        with pytest.raises(ValueError):
            Partition(((0,), (2,)))

    def test_rejects_wrong_block_order(self):
        with pytest.raises(ValueError):
            Partition(((1,), (0, 2)))

    def test_str(self):
        assert str(Partition(((0, 2), (1,)))) == "02|1"
