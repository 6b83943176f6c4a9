#ifndef HEUN_VERSION_HPP
#define HEUN_VERSION_HPP

#define HEUN_VERSION_STRING "0.1.0"

namespace heun {
inline const char* version() { return HEUN_VERSION_STRING; }
}

#endif
