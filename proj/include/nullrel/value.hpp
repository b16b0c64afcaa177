#ifndef NULLREL_VALUE_HPP
#define NULLREL_VALUE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nullrel {

// A database cell: a typed constant (text or integer) or the null marker.
// The null marker is not a constant; it compares equal only to itself as a
// cell value, and evaluators decide separately what "equality" means for it.
class Value {
public:
  enum class Kind { Int, Text, Null };

  Value() : kind_(Kind::Null) {}

  static Value null() { return Value(); }
  static Value integer(std::int64_t v) {
    Value x;
    x.kind_ = Kind::Int;
    x.int_ = v;
    return x;
  }
  static Value text(std::string v) {
    Value x;
    x.kind_ = Kind::Text;
    x.text_ = std::move(v);
    return x;
  }

  Kind kind() const { return kind_; }
  bool is_null() const { return kind_ == Kind::Null; }

  std::int64_t as_int() const {
    if (kind_ != Kind::Int) throw std::logic_error("Value: not an integer");
    return int_;
  }
  const std::string& as_text() const {
    if (kind_ != Kind::Text) throw std::logic_error("Value: not a text");
    return text_;
  }

  // Total order: integers, then texts, then the null marker. Cross-type
  // equality is false by construction (distinct kinds never compare equal).
  friend bool operator==(const Value& a, const Value& b) {
    if (a.kind_ != b.kind_) return false;
    switch (a.kind_) {
      case Kind::Int: return a.int_ == b.int_;
      case Kind::Text: return a.text_ == b.text_;
      case Kind::Null: return true;
    }
    return false;
  }
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }
  friend bool operator<(const Value& a, const Value& b) {
    if (a.kind_ != b.kind_) return rank(a.kind_) < rank(b.kind_);
    switch (a.kind_) {
      case Kind::Int: return a.int_ < b.int_;
      case Kind::Text: return a.text_ < b.text_;
      case Kind::Null: return false;
    }
    return false;
  }

  // Rendering used by the CLI text mode and error messages: NULL, 42, 'abc'.
  std::string to_string() const {
    switch (kind_) {
      case Kind::Int: return std::to_string(int_);
      case Kind::Text: return "'" + text_ + "'";
      case Kind::Null: return "NULL";
    }
    return "";
  }

private:
  static int rank(Kind k) {
    switch (k) {
      case Kind::Int: return 0;
      case Kind::Text: return 1;
      case Kind::Null: return 2;
    }
    return 3;
  }

  Kind kind_;
  std::int64_t int_ = 0;
  std::string text_;
};

}  // namespace nullrel

#endif
