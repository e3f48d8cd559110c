import pytest

from catent.partitions import (
    PartitionSpec,
    cluster_partition,
    gen_partition,
    load_partition_file,
    parse_partition_spec,
    random_partition,
    save_partition_file,
)


def test_cluster_five_matches_reference_layout():
    part = gen_partition("cluster:5:7,8", 38)
    assert part.points == ((7, 8), (7, 9), (6, 8), (7, 7), (8, 8))


def test_cluster_two_wraps_at_origin():
    part = gen_partition("cluster:2:0,0", 5)
    assert part.points == ((0, 0), (4, 0))


def test_cluster_shapes_by_size():
    c = (10, 10)
    assert cluster_partition(2, c, 20).points == ((10, 10), (9, 10))
    assert cluster_partition(3, c, 20).points == ((10, 10), (10, 11), (9, 10))
    assert cluster_partition(4, c, 20).points == ((10, 10), (10, 11), (9, 10), (9, 11))


def test_cluster_default_center():
    part = gen_partition("cluster:5", 38)
    assert part.points[0] == (19, 19)
    assert len(part.points) == 5


def test_cluster_size_bounds():
    with pytest.raises(ValueError):
        cluster_partition(6, (0, 0), 10)
    with pytest.raises(ValueError):
        cluster_partition(5, (0, 0), 2)  # wraps onto itself


def test_random_partition_deterministic():
    a = gen_partition("random:3", 200, seed=42)
    b = gen_partition("random:3", 200, seed=42)
    assert a.points == b.points
    c = gen_partition("random:3", 200, seed=43)
    assert a.points != c.points


def test_random_partition_distinct_points():
    part = random_partition(50, 12, 3)
    assert len(set(part.points)) == 50


def test_random_partition_size_guard():
    with pytest.raises(ValueError):
        gen_partition("random:26", 5, seed=0)


def test_partition_file_round_trip(tmp_path):
    path = tmp_path / "lambda.txt"
    part = gen_partition("random:4", 30, seed=9)
    save_partition_file(str(path), part)
    again = load_partition_file(str(path))
    assert again.points == part.points
    assert gen_partition(f"file:{path}", 30).points == part.points


def test_partition_file_comments_and_errors(tmp_path):
    path = tmp_path / "lambda.txt"
    path.write_text("# header\n1 2\n\n3 4  # trailing\n")
    assert load_partition_file(str(path)).points == ((1, 2), (3, 4))
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2 3\n")
    with pytest.raises(ValueError, match="expected"):
        load_partition_file(str(bad))


def test_partition_file_out_of_range_for_grid(tmp_path):
    path = tmp_path / "lambda.txt"
    path.write_text("0 0\n10 0\n")
    with pytest.raises(ValueError, match="outside"):
        gen_partition(f"file:{path}", 8)


def test_parse_partition_spec_forms():
    assert parse_partition_spec("random:5") == PartitionSpec(kind="random", size=5)
    assert parse_partition_spec("cluster:4") == PartitionSpec(kind="cluster", size=4)
    spec = parse_partition_spec("cluster:5:7,8")
    assert spec.center == (7, 8)
    assert parse_partition_spec("file:/tmp/x.txt").path == "/tmp/x.txt"
    for bad in ("boxes:3", "random", "random:2:9", "cluster:calendar", "file:"):
        with pytest.raises(ValueError):
            parse_partition_spec(bad)


def test_spec_labels():
    assert parse_partition_spec("random:5").label == "random:5"
    assert parse_partition_spec("cluster:5:7,8").label == "cluster:5:7,8"
