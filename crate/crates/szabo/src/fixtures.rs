// fixture tables are generated below
