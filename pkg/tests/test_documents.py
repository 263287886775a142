import json

import numpy as np
import pytest

from zdgames import (
    SchemaError,
    chicken_family,
    load_game,
    load_strategy,
    save_game,
    save_strategy,
)
from zdgames.documents import (
    game_from_document,
    game_to_document,
    strategy_from_document,
    strategy_to_document,
)

from helpers import rand_game, rand_strategy


def write(path, obj):
    path.write_text(json.dumps(obj), encoding="utf-8")
    return str(path)


class TestGameDocuments:
    def test_symmetric_shorthand(self, tmp_path):
        path = write(tmp_path / "game.json", {"n": 2, "m": 2, "A": [[1, 0.5], [1.5, 0]]})
        game = load_game(path)
        chicken = chicken_family(0.5)
        assert np.array_equal(game.A, chicken.A)
        assert np.array_equal(game.B, chicken.B)
        assert game.is_symmetric

    def test_missing_b_asymmetric_dims(self, tmp_path):
        doc = {"n": 2, "m": 3, "A": [[1, 2, 3], [4, 5, 6]]}
        with pytest.raises(SchemaError, match="omitted only"):
            load_game(write(tmp_path / "game.json", doc))

    def test_malformed_number(self, tmp_path):
        path = tmp_path / "game.json"
        path.write_text('{"n": 2, "m": 2, "A": [[1, 0..5], [1.5, 0]]}', encoding="utf-8")
        with pytest.raises(SchemaError, match="line 1"):
            load_game(str(path))

    def test_missing_field(self, tmp_path):
        with pytest.raises(SchemaError, match="missing field 'A'"):
            load_game(write(tmp_path / "game.json", {"n": 2, "m": 2}))

    def test_non_integer_dimension(self, tmp_path):
        doc = {"n": 2.0, "m": 2, "A": [[1, 0], [0, 1]]}
        with pytest.raises(SchemaError, match="integer"):
            load_game(write(tmp_path / "game.json", doc))

    def test_boolean_dimension_rejected(self, tmp_path):
        doc = {"n": True, "m": 2, "A": [[1, 0], [0, 1]]}
        with pytest.raises(SchemaError, match="integer"):
            load_game(write(tmp_path / "game.json", doc))

    def test_ragged_grid(self, tmp_path):
        doc = {"n": 2, "m": 2, "A": [[1, 0], [0]]}
        with pytest.raises(SchemaError, match="row 1"):
            load_game(write(tmp_path / "game.json", doc))

    def test_wrong_b_shape(self, tmp_path):
        doc = {"n": 2, "m": 2, "A": [[1, 0], [0, 1]], "B": [[1, 0]]}
        with pytest.raises(SchemaError, match="'B'"):
            load_game(write(tmp_path / "game.json", doc))

    def test_overflowing_literal_rejected(self, tmp_path):
        # json accepts 1e999 and parses it to infinity; the schema must not
        path = tmp_path / "game.json"
        path.write_text('{"n": 2, "m": 2, "A": [[1e999, 0], [0, 1]]}', encoding="utf-8")
        with pytest.raises(SchemaError, match="'A'"):
            load_game(str(path))

    def test_non_object_top_level(self, tmp_path):
        path = tmp_path / "game.json"
        path.write_text("[1, 2, 3]", encoding="utf-8")
        with pytest.raises(SchemaError, match="object"):
            load_game(str(path))

    def test_round_trip_asymmetric(self, rng, tmp_path):
        game = rand_game(rng, 3, 2)
        path = tmp_path / "game.json"
        save_game(game, path)
        loaded = load_game(path)
        assert np.array_equal(loaded.A, game.A)
        assert np.array_equal(loaded.B, game.B)

    def test_symmetric_document_omits_b(self):
        doc = game_to_document(chicken_family(0.5))
        assert "B" not in doc
        assert np.array_equal(game_from_document(doc).B, chicken_family(0.5).B)

    def test_asymmetric_document_keeps_b(self, rng):
        doc = game_to_document(rand_game(rng, 2, 2))
        assert "B" in doc


class TestStrategyDocuments:
    def test_round_trip_bitwise(self, rng, tmp_path):
        for player, n, m in [("alpha", 2, 3), ("beta", 3, 2)]:
            strategy = rand_strategy(rng, player, n, m)
            path = tmp_path / f"{player}.json"
            save_strategy(strategy, path)
            loaded = load_strategy(path)
            assert loaded.player == player
            assert np.array_equal(loaded.rows, strategy.rows)

    def test_order_field_enforced(self, rng):
        doc = strategy_to_document(rand_strategy(rng, "beta", 2, 2))
        doc["order"] = "beta-major"
        with pytest.raises(SchemaError, match="alpha-major"):
            strategy_from_document(doc)

    def test_bad_player(self, rng):
        doc = strategy_to_document(rand_strategy(rng, "alpha", 2, 2))
        doc["player"] = "gamma"
        with pytest.raises(SchemaError, match="player"):
            strategy_from_document(doc)

    def test_row_sums_validated_on_load(self, tmp_path):
        doc = {
            "player": "alpha", "n": 2, "m": 2, "order": "alpha-major",
            "rows": [[0.5, 0.4]] * 4,
        }
        with pytest.raises(SchemaError, match="sums to"):
            load_strategy(write(tmp_path / "p.json", doc))

    def test_wrong_row_count(self, rng):
        doc = strategy_to_document(rand_strategy(rng, "alpha", 2, 2))
        doc["rows"] = doc["rows"][:3]
        with pytest.raises(SchemaError, match="rows"):
            strategy_from_document(doc)

    def test_documents_are_single_line(self, rng, tmp_path):
        path = tmp_path / "p.json"
        save_strategy(rand_strategy(rng, "alpha", 2, 2), path)
        text = path.read_text(encoding="utf-8")
        assert text.endswith("\n") and text.count("\n") == 1
