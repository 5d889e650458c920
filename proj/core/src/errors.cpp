#include "socioplex/errors.hpp"

namespace socioplex {

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

DuplicateId::DuplicateId(std::string id)
    : Error("duplicate agent id \"" + id + "\""), id_(std::move(id)) {}

CombinatorialBlowup::CombinatorialBlowup(std::size_t cap, int max_dim)
    : Error("simplex count exceeds cap of " + std::to_string(cap) + " (max_dim " +
            std::to_string(max_dim) + "); lower --max-dim or --max-scale, or raise the cap"),
      cap_(cap) {}

}  // namespace socioplex
