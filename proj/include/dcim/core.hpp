// dcim - immersions of Delta-complexes via presented inverse monoids
//
// Alphabets over X and P, letters with involution, and words.

#ifndef DCIM_CORE_HPP_
#define DCIM_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dcim {

  enum class Errc {
    unknown_letter,
    syntax,
    unknown_vertex,
    index_out_of_range,
    dimension_too_low,
    invalid_complex,
    invalid_alphabet,
    not_deterministic,
    closure_budget_exceeded,
    p_letter_present,
    no_such_map,
    not_an_immersion,
    not_in_loop_monoid,
    lift_failure,
    ambiguous_cell,
    io,
    usage,
  };

  //! Machine-readable prefix used by the CLI, e.g. "E_UNKNOWN_LETTER".
  inline std::string_view code_name(Errc e) noexcept {
    switch (e) {
      case Errc::unknown_letter: return "E_UNKNOWN_LETTER";
      case Errc::syntax: return "E_SYNTAX";
      case Errc::unknown_vertex: return "E_UNKNOWN_VERTEX";
      case Errc::index_out_of_range: return "E_INDEX_OUT_OF_RANGE";
      case Errc::dimension_too_low: return "E_DIMENSION_TOO_LOW";
      case Errc::invalid_complex: return "E_INVALID_COMPLEX";
      case Errc::invalid_alphabet: return "E_INVALID_ALPHABET";
      case Errc::not_deterministic: return "E_NOT_DETERMINISTIC";
      case Errc::closure_budget_exceeded: return "E_CLOSURE_BUDGET";
      case Errc::p_letter_present: return "E_P_LETTER_PRESENT";
      case Errc::no_such_map: return "E_NO_SUCH_MAP";
      case Errc::not_an_immersion: return "E_NOT_AN_IMMERSION";
      case Errc::not_in_loop_monoid: return "E_NOT_IN_LOOP_MONOID";
      case Errc::lift_failure: return "E_LIFT_FAILURE";
      case Errc::ambiguous_cell: return "E_AMBIGUOUS_CELL";
      case Errc::io: return "E_IO";
      case Errc::usage: return "E_USAGE";
    }
    return "E_UNKNOWN";
  }

  class Error : public std::runtime_error {
   public:
    Error(Errc code, std::string const& what)
        : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept {
      return code_;
    }

   private:
    Errc code_;
  };

  using LabelId = std::uint32_t;

  //! True iff `name` matches [A-Za-z_][A-Za-z0-9_]*.
  inline bool is_identifier(std::string_view name) noexcept {
    if (name.empty()) {
      return false;
    }
    auto alpha = [](char c) {
      return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(name.front())) {
      return false;
    }
    for (char c : name) {
      if (!alpha(c) && !digit(c)) {
        return false;
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Letter
  ////////////////////////////////////////////////////////////////////////

  //! A letter of X, X^-1 or P. Cell letters (P) are their own inverses, so
  //! they are never stored inverted.
  class Letter {
   public:
    enum class Kind : std::uint8_t { x, p };

    static constexpr Letter x(std::uint32_t index, bool inverted = false) {
      return Letter(Kind::x, index, inverted);
    }

    static constexpr Letter p(std::uint32_t index) {
      return Letter(Kind::p, index, false);
    }

    constexpr Kind kind() const noexcept {
      return kind_;
    }
    constexpr bool is_p() const noexcept {
      return kind_ == Kind::p;
    }
    constexpr std::uint32_t index() const noexcept {
      return index_;
    }
    constexpr bool inverted() const noexcept {
      return inverted_;
    }

    constexpr Letter inverse() const noexcept {
      return is_p() ? *this : Letter(kind_, index_, !inverted_);
    }

    friend constexpr bool operator==(Letter, Letter) = default;

   private:
    constexpr Letter(Kind k, std::uint32_t i, bool inv)
        : kind_(k), index_(i), inverted_(k == Kind::x && inv) {}

    Kind          kind_;
    std::uint32_t index_;
    bool          inverted_;
  };

  ////////////////////////////////////////////////////////////////////////
  // Alphabet
  ////////////////////////////////////////////////////////////////////////

  //! The edge labels X and the cell labels P = P_2 u ... u P_n.
  //!
  //! Letters are numbered densely as label ids: x_i -> 2i, x_i^-1 -> 2i+1,
  //! p_j -> 2|X|+j. This is also the exploration order used wherever a
  //! canonical traversal is needed.
  class Alphabet {
   public:
    Alphabet() = default;

    Alphabet(std::vector<std::string>                          x_letters,
             std::vector<std::pair<std::string, std::size_t>> p_letters)
        : x_(std::move(x_letters)), p_(std::move(p_letters)) {
      for (std::size_t i = 0; i < x_.size(); ++i) {
        insert_name(x_[i], Letter::x(static_cast<std::uint32_t>(i)));
      }
      for (std::size_t j = 0; j < p_.size(); ++j) {
        if (p_[j].second < 2) {
          throw Error(Errc::invalid_alphabet,
                      "cell letter '" + p_[j].first
                          + "' must have dimension >= 2");
        }
        insert_name(p_[j].first, Letter::p(static_cast<std::uint32_t>(j)));
      }
    }

    std::vector<std::string> const& x_letters() const noexcept {
      return x_;
    }
    std::vector<std::pair<std::string, std::size_t>> const&
    p_letters() const noexcept {
      return p_;
    }

    std::size_t x_size() const noexcept {
      return x_.size();
    }
    std::size_t p_size() const noexcept {
      return p_.size();
    }
    std::size_t label_count() const noexcept {
      return 2 * x_.size() + p_.size();
    }

    std::optional<Letter> find(std::string_view name) const {
      auto it = names_.find(std::string(name));
      if (it == names_.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    std::string const& name(Letter l) const {
      return l.is_p() ? p_.at(l.index()).first : x_.at(l.index());
    }

    std::size_t dimension(Letter l) const {
      return l.is_p() ? p_.at(l.index()).second : 1;
    }

    LabelId label(Letter l) const noexcept {
      return l.is_p() ? static_cast<LabelId>(2 * x_.size() + l.index())
                      : static_cast<LabelId>(2 * l.index() + l.inverted());
    }

    Letter letter(LabelId id) const noexcept {
      if (id < 2 * x_.size()) {
        return Letter::x(id / 2, id % 2 == 1);
      }
      return Letter::p(static_cast<std::uint32_t>(id - 2 * x_.size()));
    }

    LabelId inverse(LabelId id) const noexcept {
      return id < 2 * x_.size() ? (id ^ 1U) : id;
    }

    bool is_p_label(LabelId id) const noexcept {
      return id >= 2 * x_.size();
    }

    bool operator==(Alphabet const& that) const {
      return x_ == that.x_ && p_ == that.p_;
    }

   private:
    void insert_name(std::string const& name, Letter l) {
      if (!is_identifier(name)) {
        throw Error(Errc::invalid_alphabet,
                    "letter name '" + name + "' is not an identifier");
      }
      if (!names_.emplace(name, l).second) {
        throw Error(Errc::invalid_alphabet,
                    "letter name '" + name + "' is used twice");
      }
    }

    std::vector<std::string>                          x_;
    std::vector<std::pair<std::string, std::size_t>> p_;
    std::unordered_map<std::string, Letter>           names_;
  };

  ////////////////////////////////////////////////////////////////////////
  // Word
  ////////////////////////////////////////////////////////////////////////

  class Word {
   public:
    Word() = default;
    Word(std::initializer_list<Letter> letters) : letters_(letters) {}
    explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

    std::size_t size() const noexcept {
      return letters_.size();
    }
    bool empty() const noexcept {
      return letters_.empty();
    }
    Letter operator[](std::size_t i) const {
      return letters_[i];
    }
    auto begin() const noexcept {
      return letters_.begin();
    }
    auto end() const noexcept {
      return letters_.end();
    }
    std::vector<Letter> const& letters() const noexcept {
      return letters_;
    }

    void push_back(Letter l) {
      letters_.push_back(l);
    }
    void pop_back() {
      letters_.pop_back();
    }

    Word& operator*=(Word const& that) {
      letters_.insert(letters_.end(), that.letters_.begin(), that.letters_.end());
      return *this;
    }

    friend Word operator*(Word lhs, Word const& rhs) {
      lhs *= rhs;
      return lhs;
    }

    bool has_p_letter() const noexcept {
      for (Letter l : letters_) {
        if (l.is_p()) {
          return true;
        }
      }
      return false;
    }

    friend bool operator==(Word const&, Word const&) = default;

   private:
    std::vector<Letter> letters_;
  };

  //! (x_1 ... x_n)^-1 = x_n^-1 ... x_1^-1; cell letters are fixed.
  inline Word invert_word(Word const& w) {
    std::vector<Letter> out;
    out.reserve(w.size());
    for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
      out.push_back(it->inverse());
    }
    return Word(std::move(out));
  }

  //! Parses whitespace-separated tokens `name` or `name'`; the lone token
  //! `1` (or blank text) is the empty word.
  inline Word parse_word(std::string_view text, Alphabet const& alphabet) {
    std::istringstream  in{std::string(text)};
    std::vector<std::string> tokens;
    for (std::string tok; in >> tok;) {
      tokens.push_back(std::move(tok));
    }
    if (tokens.size() == 1 && tokens[0] == "1") {
      return Word();
    }
    Word w;
    for (auto const& tok : tokens) {
      std::string_view name = tok;
      bool             inverted = false;
      if (name.size() > 1 && name.back() == '\'') {
        name.remove_suffix(1);
        inverted = true;
      }
      if (!is_identifier(name)) {
        throw Error(Errc::syntax, "malformed token '" + tok + "'");
      }
      auto l = alphabet.find(name);
      if (!l) {
        throw Error(Errc::unknown_letter,
                    "unknown letter '" + std::string(name) + "'");
      }
      w.push_back(inverted ? l->inverse() : *l);
    }
    return w;
  }

  inline std::string format_word(Word const& w, Alphabet const& alphabet) {
    if (w.empty()) {
      return "1";
    }
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i != 0) {
        out += ' ';
      }
      out += alphabet.name(w[i]);
      if (w[i].inverted()) {
        out += '\'';
      }
    }
    return out;
  }

}  // namespace dcim

#endif  // DCIM_CORE_HPP_
