# Database package