#include <pfxauth/scheme.hpp>
#include <pfxauth/scheme.hpp>
