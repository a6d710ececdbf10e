#include <pfxauth/hash.hpp>
#include <pfxauth/hash.hpp>
