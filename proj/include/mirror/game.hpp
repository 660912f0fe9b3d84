#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mirror/errors.hpp"

namespace mirror {

// A declared number. The universe of one game is [1, 2N].
using num = std::uint32_t;

enum class Player { Alice, Bob };
enum class Outcome { Ongoing, AliceWins, BobWins, Tie };

Player other(Player p);
std::string to_string(Player p);
std::string to_string(Outcome o);

struct GameConfig {
  std::uint32_t n = 1;        // universe is [1, 2n], Alice moves first
  double c = 2.0;             // memory constant; Alice's budget is k = ceil(c * log2 n)
  std::uint64_t master_seed = 0;
};

// Referee view of a single game. The referee is bookkeeping, not a player:
// its storage is never counted against any strategy's memory meter.
//
// Rules enforced here: players alternate (Alice first), a declaration must
// lie in [1, 2N], repeating any declared number loses immediately, and a
// game in which all 2N numbers get declared is a tie.
class GameState {
 public:
  explicit GameState(const GameConfig& config);

  // Applies one declaration. Throws GameOver if the game already ended,
  // WrongTurn if `player` is not on the move, OutOfRange if x is outside
  // [1, 2N]. A repeated x terminates the game in the opponent's favor
  // without mutating the declared set.
  void apply_declaration(Player player, num x);

  // Alice resigns (her strategy could not produce a safe declaration).
  // Surfaces as BobWins with the abort flag set. Throws GameOver if the
  // game already ended.
  void abort_alice();

  Outcome outcome() const { return outcome_; }
  Player mover() const { return mover_; }
  bool abort_flag() const { return abort_; }

  bool is_declared(num x) const;
  std::uint32_t declared_count() const { return declared_count_; }
  std::vector<num> declared_sorted() const;
  std::uint32_t universe() const { return 2 * config_.n; }
  const GameConfig& config() const { return config_; }

 private:
  GameConfig config_;
  std::vector<bool> declared_;   // index 1..2N
  std::uint32_t declared_count_ = 0;
  Player mover_ = Player::Alice;
  Outcome outcome_ = Outcome::Ongoing;
  bool abort_ = false;
};

// Validates the config (N >= 1, c > 0) and returns a fresh game.
GameState new_game(const GameConfig& config);

struct Move {
  Player player;
  num value;
};

// Record of one finished (or aborted) game.
struct GameTranscript {
  std::vector<Move> moves;
  Outcome outcome = Outcome::Ongoing;
  bool abort = false;
  std::string abort_reason;

  // One move per line ("A 17" / "B 42"), then
  // "OUTCOME <Tie|AliceWins|BobWins>" with an " abort" suffix when the
  // abort flag is set.
  void write(std::ostream& os) const;
  std::string to_text() const;
};

}  // namespace mirror
