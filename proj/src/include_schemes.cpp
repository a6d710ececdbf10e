#include <pfxauth/schemes.hpp>
#include <pfxauth/schemes.hpp>
