#include <pfxauth/bits.hpp>
#include <pfxauth/bits.hpp>
