#ifndef PSITM_VERSION_HPP
#define PSITM_VERSION_HPP

namespace psitm {

inline constexpr const char kVersion[] = "0.1.0";

}

#endif
