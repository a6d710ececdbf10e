#include <pfxauth/oracle.hpp>
#include <pfxauth/oracle.hpp>
