#ifndef AFROMT_VERSION_HPP
#define AFROMT_VERSION_HPP

#include <string_view>

namespace afromt {

inline constexpr std::string_view kVersion = "1.0.0";

}  // namespace afromt

#endif  // AFROMT_VERSION_HPP
