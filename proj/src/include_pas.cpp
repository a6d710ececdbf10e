#include <pfxauth/pas.hpp>
#include <pfxauth/pas.hpp>
