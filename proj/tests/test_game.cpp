#include <doctest.h>

#include <random>

#include "mirror/game.hpp"
#include "mirror/rng.hpp"

using namespace mirror;

TEST_CASE("config validation") {
  CHECK_THROWS_AS(new_game(GameConfig{0, 2.0, 0}), InvalidConfig);
  CHECK_THROWS_AS(new_game(GameConfig{4, 0.0, 0}), InvalidConfig);
  CHECK_THROWS_AS(new_game(GameConfig{4, -1.0, 0}), InvalidConfig);
  CHECK_NOTHROW(new_game(GameConfig{1, 0.5, 0}));
}

TEST_CASE("alice moves first and turns alternate") {
  GameState g = new_game(GameConfig{2, 2.0, 0});
  CHECK(g.mover() == Player::Alice);
  CHECK_THROWS_AS(g.apply_declaration(Player::Bob, 1), WrongTurn);
  g.apply_declaration(Player::Alice, 1);
  CHECK(g.mover() == Player::Bob);
  CHECK_THROWS_AS(g.apply_declaration(Player::Alice, 2), WrongTurn);
  g.apply_declaration(Player::Bob, 2);
  CHECK(g.mover() == Player::Alice);
}

TEST_CASE("declarations must lie in [1, 2N]") {
  GameState g = new_game(GameConfig{2, 2.0, 0});
  CHECK_THROWS_AS(g.apply_declaration(Player::Alice, 0), OutOfRange);
  CHECK_THROWS_AS(g.apply_declaration(Player::Alice, 5), OutOfRange);
  CHECK_THROWS_AS(g.is_declared(0), OutOfRange);
  CHECK_THROWS_AS(g.is_declared(5), OutOfRange);
  CHECK(g.universe() == 4);
}

TEST_CASE("a repeat loses immediately and leaves the set untouched") {
  GameState g = new_game(GameConfig{2, 2.0, 0});
  g.apply_declaration(Player::Alice, 3);
  g.apply_declaration(Player::Bob, 3);  // repeat by Bob
  CHECK(g.outcome() == Outcome::AliceWins);
  CHECK(g.declared_count() == 1);
  CHECK(g.declared_sorted() == std::vector<num>{3});
  CHECK_FALSE(g.abort_flag());
  CHECK_THROWS_AS(g.apply_declaration(Player::Alice, 1), GameOver);

  GameState h = new_game(GameConfig{2, 2.0, 0});
  h.apply_declaration(Player::Alice, 1);
  h.apply_declaration(Player::Bob, 2);
  h.apply_declaration(Player::Alice, 2);  // repeat by Alice
  CHECK(h.outcome() == Outcome::BobWins);
  CHECK(h.declared_count() == 2);
}

TEST_CASE("declaring all 2N numbers is a tie") {
  GameState g = new_game(GameConfig{1, 2.0, 0});
  g.apply_declaration(Player::Alice, 2);
  CHECK(g.outcome() == Outcome::Ongoing);
  g.apply_declaration(Player::Bob, 1);
  CHECK(g.outcome() == Outcome::Tie);

  GameState h = new_game(GameConfig{2, 2.0, 0});
  for (num x = 1; x <= 4; ++x) {
    h.apply_declaration(x % 2 ? Player::Alice : Player::Bob, x);
  }
  CHECK(h.outcome() == Outcome::Tie);
  CHECK(h.declared_sorted() == std::vector<num>{1, 2, 3, 4});
}

TEST_CASE("abort surfaces as a bob win with the abort flag") {
  GameState g = new_game(GameConfig{2, 2.0, 0});
  g.apply_declaration(Player::Alice, 1);
  g.abort_alice();
  CHECK(g.outcome() == Outcome::BobWins);
  CHECK(g.abort_flag());
  CHECK_THROWS_AS(g.abort_alice(), GameOver);
  CHECK_THROWS_AS(g.apply_declaration(Player::Bob, 2), GameOver);
}

TEST_CASE("random legal play always ends in a tie") {
  Rng rng = make_rng(424242);
  for (int round = 0; round < 20; ++round) {
    const std::uint32_t n = 8;
    GameState g = new_game(GameConfig{n, 2.0, 0});
    std::vector<num> free;
    for (num x = 1; x <= 2 * n; ++x) free.push_back(x);
    std::uint32_t moves = 0;
    while (g.outcome() == Outcome::Ongoing) {
      std::uniform_int_distribution<std::size_t> d(0, free.size() - 1);
      const std::size_t at = d(rng);
      g.apply_declaration(g.mover(), free[at]);
      free.erase(free.begin() + static_cast<std::ptrdiff_t>(at));
      ++moves;
    }
    CHECK(g.outcome() == Outcome::Tie);
    CHECK(moves == 2 * n);
    CHECK(free.empty());
  }
}

TEST_CASE("transcript text format") {
  GameTranscript t;
  t.moves = {{Player::Alice, 1}, {Player::Bob, 4}, {Player::Alice, 2}};
  t.outcome = Outcome::BobWins;
  t.abort = true;
  CHECK(t.to_text() == "A 1\nB 4\nA 2\nOUTCOME BobWins abort\n");

  GameTranscript u;
  u.moves = {{Player::Alice, 7}};
  u.outcome = Outcome::Tie;
  CHECK(u.to_text() == "A 7\nOUTCOME Tie\n");
}

TEST_CASE("player and outcome names") {
  CHECK(to_string(Player::Alice) == "Alice");
  CHECK(to_string(Player::Bob) == "Bob");
  CHECK(other(Player::Alice) == Player::Bob);
  CHECK(other(Player::Bob) == Player::Alice);
  CHECK(to_string(Outcome::Tie) == "Tie");
  CHECK(to_string(Outcome::AliceWins) == "AliceWins");
  CHECK(to_string(Outcome::BobWins) == "BobWins");
  CHECK(to_string(Outcome::Ongoing) == "Ongoing");
}
