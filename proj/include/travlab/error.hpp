#ifndef TRAVLAB_ERROR_HPP
#define TRAVLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace travlab {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t pos)
      : Error(what + " (at position " + std::to_string(pos) + ")"), pos_(pos) {}
  std::size_t position() const { return pos_; }

private:
  std::size_t pos_;
};

} // namespace travlab

#endif
