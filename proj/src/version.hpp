#ifndef HSMOR_VERSION_HPP
#define HSMOR_VERSION_HPP

namespace hsmor {

inline constexpr const char* kVersion = "0.1.0";

} // namespace hsmor

#endif
