#include <pfxauth/error.hpp>
#include <pfxauth/error.hpp>
