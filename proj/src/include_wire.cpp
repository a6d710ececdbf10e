#include <pfxauth/wire.hpp>
#include <pfxauth/wire.hpp>
