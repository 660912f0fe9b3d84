#include "mirror/game.hpp"

#include <ostream>
#include <sstream>

namespace mirror {

Player other(Player p) {
  return p == Player::Alice ? Player::Bob : Player::Alice;
}

std::string to_string(Player p) {
  return p == Player::Alice ? "Alice" : "Bob";
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Ongoing:
      return "Ongoing";
    case Outcome::AliceWins:
      return "AliceWins";
    case Outcome::BobWins:
      return "BobWins";
    case Outcome::Tie:
      return "Tie";
  }
  return "?";
}

GameState::GameState(const GameConfig& config) : config_(config) {
  if (config.n < 1) throw InvalidConfig("N must be at least 1");
  if (!(config.c > 0.0)) throw InvalidConfig("c must be positive");
  declared_.assign(2 * config.n + 1, false);
}

GameState new_game(const GameConfig& config) { return GameState(config); }

bool GameState::is_declared(num x) const {
  if (x < 1 || x > universe()) throw OutOfRange("number outside [1, 2N]");
  return declared_[x];
}

std::vector<num> GameState::declared_sorted() const {
  std::vector<num> out;
  out.reserve(declared_count_);
  for (num x = 1; x <= universe(); ++x) {
    if (declared_[x]) out.push_back(x);
  }
  return out;
}

void GameState::apply_declaration(Player player, num x) {
  if (outcome_ != Outcome::Ongoing) {
    throw GameOver("the game already terminated");
  }
  if (player != mover_) throw WrongTurn(to_string(player) + " is not on the move");
  if (x < 1 || x > universe()) throw OutOfRange("number outside [1, 2N]");

  if (declared_[x]) {
    // Repetition loses immediately; the declared set is left untouched.
    outcome_ = player == Player::Alice ? Outcome::BobWins : Outcome::AliceWins;
    return;
  }
  declared_[x] = true;
  ++declared_count_;
  if (declared_count_ == universe()) {
    outcome_ = Outcome::Tie;
  } else {
    mover_ = other(mover_);
  }
}

void GameState::abort_alice() {
  if (outcome_ != Outcome::Ongoing) {
    throw GameOver("the game already terminated");
  }
  outcome_ = Outcome::BobWins;
  abort_ = true;
}

void GameTranscript::write(std::ostream& os) const {
  for (const Move& m : moves) {
    os << (m.player == Player::Alice ? 'A' : 'B') << ' ' << m.value << '\n';
  }
  os << "OUTCOME " << to_string(outcome);
  if (abort) os << " abort";
  os << '\n';
}

std::string GameTranscript::to_text() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

}  // namespace mirror
